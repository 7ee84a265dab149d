#pragma once

#include <Eigen/Core>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ptcoat/fourier.hpp"

namespace ptcoat {

/// Closed star-shaped curve  t -> (r0 + f(t)) (cos t, sin t).
///
/// Construction scans the radius on a dense grid and rejects curves that touch
/// or cross the origin. All evaluators are pure; instances are immutable.
template <typename Scalar>
class StarBoundary {
public:
  using Vec2 = Eigen::Vector2<Scalar>;

  explicit StarBoundary(Scalar base_radius,
                        TrigPolynomial<Scalar> perturbation = TrigPolynomial<Scalar>())
      : base_radius_(base_radius), perturbation_(std::move(perturbation)) {
    if (!(base_radius > Scalar(0)))
      throw std::invalid_argument("StarBoundary: base radius must be positive");
    min_radius_ = max_radius_ = radius(Scalar(0));
    constexpr int scan = 4096;
    for (int i = 1; i < scan; ++i) {
      const Scalar r = radius(two_pi<Scalar> * Scalar(i) / Scalar(scan));
      min_radius_ = std::min(min_radius_, r);
      max_radius_ = std::max(max_radius_, r);
    }
    if (!(min_radius_ > Scalar(0))) {
      std::ostringstream msg;
      msg << "StarBoundary: radius reaches " << min_radius_ << "; curve must stay away from the origin";
      throw std::invalid_argument(msg.str());
    }
  }

  Scalar base_radius() const { return base_radius_; }
  const TrigPolynomial<Scalar>& perturbation() const { return perturbation_; }
  Scalar min_radius() const { return min_radius_; }
  Scalar max_radius() const { return max_radius_; }

  Scalar radius(Scalar t) const { return base_radius_ + perturbation_(t); }
  Scalar radius_d1(Scalar t) const { return perturbation_.d1(t); }
  Scalar radius_d2(Scalar t) const { return perturbation_.d2(t); }

  Vec2 point(Scalar t) const {
    const Scalar r = radius(t);
    return Vec2(r * std::cos(t), r * std::sin(t));
  }

  /// Outward normal times the parametrization Jacobian, nu(t) * J(t).
  Vec2 normal_jacobian(Scalar t) const {
    const Scalar r = radius(t), dr = radius_d1(t);
    const Scalar c = std::cos(t), s = std::sin(t);
    return Vec2(r * c + dr * s, r * s - dr * c);
  }

  /// J(t) = sqrt(r^2 + r'^2) = |d/dt point(t)|.
  Scalar jacobian(Scalar t) const { return std::hypot(radius(t), radius_d1(t)); }

  Vec2 unit_normal(Scalar t) const { return normal_jacobian(t) / jacobian(t); }

  /// Signed curvature of the counterclockwise parametrization (1/r for a circle).
  Scalar curvature(Scalar t) const {
    const Scalar r = radius(t), dr = radius_d1(t), ddr = radius_d2(t);
    const Scalar g = r * r + dr * dr;
    return (g + dr * dr - r * ddr) / (g * std::sqrt(g));
  }

  StarBoundary scaled(Scalar factor) const {
    return StarBoundary(base_radius_ * factor, perturbation_.scaled(factor));
  }

  StarBoundary rotated(Scalar phi) const {
    return StarBoundary(base_radius_, perturbation_.rotated(phi));
  }

private:
  Scalar base_radius_;
  TrigPolynomial<Scalar> perturbation_;
  Scalar min_radius_;
  Scalar max_radius_;
};

/// Smallest same-angle radial gap outer(t) - inner(t) over a dense grid.
template <typename Scalar>
Scalar min_radial_gap(const StarBoundary<Scalar>& inner, const StarBoundary<Scalar>& outer) {
  constexpr int scan = 4096;
  Scalar gap = outer.radius(Scalar(0)) - inner.radius(Scalar(0));
  for (int i = 1; i < scan; ++i) {
    const Scalar t = two_pi<Scalar> * Scalar(i) / Scalar(scan);
    gap = std::min(gap, outer.radius(t) - inner.radius(t));
  }
  return gap;
}

/// Nesting gate: the radial gap must keep at least 10% of the unperturbed
/// annulus width, so the cross kernels stay uniformly nonsingular.
template <typename Scalar>
bool nested_with_margin(const StarBoundary<Scalar>& inner, const StarBoundary<Scalar>& outer) {
  const Scalar width = outer.base_radius() - inner.base_radius();
  return width > Scalar(0) && min_radial_gap(inner, outer) >= Scalar(0.1) * width;
}

/// Boundary data cached at N uniform angles (used by the quadrature assembly).
template <typename Scalar>
struct BoundarySamples {
  Eigen::VectorX<Scalar> theta;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> points;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> normal_jac;
  Eigen::VectorX<Scalar> jacobian;
  Eigen::VectorX<Scalar> curvature;
  Eigen::VectorX<Scalar> radius;
};

template <typename Scalar>
BoundarySamples<Scalar> sample_boundary(const StarBoundary<Scalar>& bnd, int n) {
  BoundarySamples<Scalar> s;
  s.theta.resize(n);
  s.points.resize(2, n);
  s.normal_jac.resize(2, n);
  s.jacobian.resize(n);
  s.curvature.resize(n);
  s.radius.resize(n);
  for (int i = 0; i < n; ++i) {
    const Scalar t = two_pi<Scalar> * Scalar(i) / Scalar(n);
    s.theta(i) = t;
    s.points.col(i) = bnd.point(t);
    s.normal_jac.col(i) = bnd.normal_jacobian(t);
    s.jacobian(i) = bnd.jacobian(t);
    s.curvature(i) = bnd.curvature(t);
    s.radius(i) = bnd.radius(t);
  }
  return s;
}

}  // namespace ptcoat
