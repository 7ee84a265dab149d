#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ptcoat/geometry.hpp"

namespace ptcoat {

namespace detail {

// Kernel entry from precomputed samples: <x - y, nuJ_x> / (2 pi |x - y|^2).
// The evaluation-point Jacobian is folded in through nuJ, so the operators act
// on Jacobian-weighted densities with plain d(theta) quadrature.
template <typename Scalar>
inline Scalar interaction(const Eigen::Vector2<Scalar>& x, const Eigen::Vector2<Scalar>& y,
                          const Eigen::Vector2<Scalar>& normal_jac_x) {
  const Eigen::Vector2<Scalar> d = x - y;
  return d.dot(normal_jac_x) / (two_pi<Scalar> * d.squaredNorm());
}

}  // namespace detail

/// Adjoint Neumann-Poincare kernel of a boundary in angle form, evaluation
/// Jacobian folded in. Smooth across the diagonal; the coincidence value is
/// the curvature limit kappa(t) J(t) / (4 pi). Constant 1/(4 pi) on circles.
///
/// Below an angular separation of cbrt(eps) the direct quotient loses to
/// cancellation (its rounding error grows like eps/dist^2 while the limit is
/// off by O(dist)), so the curvature value takes over there.
template <typename Scalar>
Scalar np_kernel(const StarBoundary<Scalar>& bnd, Scalar eta, Scalar theta) {
  const Scalar dist = std::abs(std::remainder(eta - theta, two_pi<Scalar>));
  if (dist < std::cbrt(std::numeric_limits<Scalar>::epsilon()))
    return bnd.curvature(eta) * bnd.jacobian(eta) / (2 * two_pi<Scalar>);
  return detail::interaction(bnd.point(eta), bnd.point(theta), bnd.normal_jacobian(eta));
}

/// Kernel of the normal derivative of the single layer spread on `source`,
/// evaluated on the disjoint curve `target` (Jacobian of `target` folded in).
template <typename Scalar>
Scalar flux_kernel(const StarBoundary<Scalar>& target, const StarBoundary<Scalar>& source,
                   Scalar eta, Scalar theta) {
  return detail::interaction(target.point(eta), source.point(theta), target.normal_jacobian(eta));
}

/// A strictly nested core/shell boundary pair. Construction enforces the
/// separation gate, after which all four block kernels are smooth and the
/// cross-kernel denominators are bounded below.
template <typename Scalar>
class KernelPair {
public:
  KernelPair(StarBoundary<Scalar> inner, StarBoundary<Scalar> outer)
      : inner_(std::move(inner)), outer_(std::move(outer)) {
    const Scalar width = outer_.base_radius() - inner_.base_radius();
    if (!(width > Scalar(0)))
      throw std::invalid_argument("KernelPair: outer base radius must exceed inner");
    const Scalar gap = min_radial_gap(inner_, outer_);
    if (!(gap >= Scalar(0.1) * width)) {
      std::ostringstream msg;
      msg << "KernelPair: radial gap " << gap << " is below the admissible margin "
          << Scalar(0.1) * width;
      throw std::invalid_argument(msg.str());
    }
  }

  const StarBoundary<Scalar>& inner() const { return inner_; }
  const StarBoundary<Scalar>& outer() const { return outer_; }

  /// Self-interaction kernel on the inner curve.
  Scalar a(Scalar eta, Scalar theta) const { return np_kernel(inner_, eta, theta); }
  /// Self-interaction kernel on the outer curve.
  Scalar b(Scalar eta, Scalar theta) const { return np_kernel(outer_, eta, theta); }
  /// Flux through the inner curve of a layer on the outer curve.
  Scalar c(Scalar eta, Scalar theta) const { return flux_kernel(inner_, outer_, eta, theta); }
  /// Flux through the outer curve of a layer on the inner curve.
  Scalar d(Scalar eta, Scalar theta) const { return flux_kernel(outer_, inner_, eta, theta); }

private:
  StarBoundary<Scalar> inner_;
  StarBoundary<Scalar> outer_;
};

}  // namespace ptcoat
