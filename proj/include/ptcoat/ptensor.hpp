#pragma once

#include <Eigen/Core>
#include <Eigen/QR>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ptcoat/nystrom.hpp"

namespace ptcoat {

/// Polarization tensor of a core-shell inclusion, in units of length^2.
///
/// Sign convention: with this M the exterior field perturbation satisfies
///   u(x) - a.x = -<M a, x> / (2 pi |x|^2) + O(|x|^-2),
/// the convention under which the moment integrals of the transmission
/// densities are taken verbatim. The tensor vanishes exactly when the
/// inclusion is neutral, so the coating problem is convention-free.
///
/// m21 is computed from its own moment integral rather than copied from m12;
/// their agreement is the cheapest global consistency check on a solve.
template <typename Scalar>
struct PolarizationTensor {
  Scalar m11 = 0, m12 = 0, m21 = 0, m22 = 0;

  Eigen::Matrix2<Scalar> matrix() const {
    Eigen::Matrix2<Scalar> m;
    m << m11, m12, m21, m22;
    return m;
  }

  Scalar frobenius_norm() const { return matrix().norm(); }
  Scalar max_abs() const { return matrix().template lpNorm<Eigen::Infinity>(); }
  Scalar symmetry_defect() const { return std::abs(m12 - m21); }
};

/// Moment integrals of already-solved densities.
template <typename Scalar>
PolarizationTensor<Scalar> polarization_tensor(const KernelPair<Scalar>& pair,
                                               const Densities<Scalar>& dens) {
  const int n = static_cast<int>(dens.inner.rows());
  const Scalar w = two_pi<Scalar> / Scalar(n);
  PolarizationTensor<Scalar> m;
  for (int k = 0; k < n; ++k) {
    const Scalar t = two_pi<Scalar> * Scalar(k) / Scalar(n);
    const Scalar c = std::cos(t), s = std::sin(t);
    const Scalar ri = pair.inner().radius(t), re = pair.outer().radius(t);
    const Scalar p1 = ri * dens.inner(k, 0) + re * dens.outer(k, 0);
    const Scalar p2 = ri * dens.inner(k, 1) + re * dens.outer(k, 1);
    m.m11 += w * c * p1;
    m.m12 += w * s * p1;
    m.m21 += w * c * p2;
    m.m22 += w * s * p2;
  }
  return m;
}

/// Assemble, solve and integrate in one step.
template <typename Scalar>
PolarizationTensor<Scalar> polarization_tensor(const KernelPair<Scalar>& pair,
                                               const Material<Scalar>& mat, int n,
                                               bool deflate = false) {
  return polarization_tensor(pair, solve_densities(assemble(pair, mat, n, deflate)));
}

/// Exterior field perturbation u_l(x) - x_l evaluated from the two single
/// layer potentials. Rejects points closer to the shell than half the outer
/// base radius, where the quadrature would need near-singularity treatment.
template <typename Scalar>
Scalar far_field_perturbation(const KernelPair<Scalar>& pair, const Densities<Scalar>& dens,
                              const Eigen::Vector2<Scalar>& x, int l) {
  if (l != 1 && l != 2) throw std::invalid_argument("far_field_perturbation: l must be 1 or 2");
  const Scalar clearance = x.norm() - pair.outer().max_radius();
  if (!(clearance >= Scalar(0.5) * pair.outer().base_radius())) {
    std::ostringstream msg;
    msg << "far_field_perturbation: point at distance " << clearance
        << " from the shell; need at least " << Scalar(0.5) * pair.outer().base_radius();
    throw std::invalid_argument(msg.str());
  }
  const int n = static_cast<int>(dens.inner.rows());
  const Scalar w = two_pi<Scalar> / Scalar(n);
  Scalar u = 0;
  for (int k = 0; k < n; ++k) {
    const Scalar t = two_pi<Scalar> * Scalar(k) / Scalar(n);
    u += dens.inner(k, l - 1) * std::log((x - pair.inner().point(t)).norm());
    u += dens.outer(k, l - 1) * std::log((x - pair.outer().point(t)).norm());
  }
  return w * u / two_pi<Scalar>;
}

/// Least-squares dipole coefficient recovered from far-field samples on the
/// ring |x| = 10 r_e (32 angles, both field directions), fitted in the same
/// sign convention as PolarizationTensor. Independent of the moment-integral
/// route, so the two must agree on any valid solve.
template <typename Scalar>
Eigen::Matrix2<Scalar> dipole_fit(const KernelPair<Scalar>& pair, const Densities<Scalar>& dens) {
  constexpr int n_angles = 32;
  const Scalar radius = Scalar(10) * pair.outer().base_radius();
  Eigen::Matrix<Scalar, n_angles, 2> design;
  Eigen::Matrix<Scalar, n_angles, 2> values;
  for (int s = 0; s < n_angles; ++s) {
    const Scalar phi = two_pi<Scalar> * Scalar(s) / Scalar(n_angles);
    const Eigen::Vector2<Scalar> x(radius * std::cos(phi), radius * std::sin(phi));
    design(s, 0) = -x(0) / (two_pi<Scalar> * x.squaredNorm());
    design(s, 1) = -x(1) / (two_pi<Scalar> * x.squaredNorm());
    values(s, 0) = far_field_perturbation(pair, dens, x, 1);
    values(s, 1) = far_field_perturbation(pair, dens, x, 2);
  }
  // Column l-1 of the fit is M e_l.
  return design.colPivHouseholderQr().solve(values);
}

}  // namespace ptcoat
