#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ptcoat/geometry.hpp"
#include "ptcoat/kernels.hpp"
#include "ptcoat/material.hpp"

namespace ptcoat {

/// Raised when the dense solve cannot be trusted (near-singular system or a
/// residual far above the quadrature floor). Usually signals material/geometry
/// parameters outside the perturbative regime.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature-rule discretization of the block transmission operator on N
/// uniform angles,
///   [ -lambda I + A   C ]
///   [  D              -mu I + B ],
/// together with the right-hand sides for the two uniform field directions.
/// Unknown ordering: (inner density nodes 0..N-1, outer density nodes 0..N-1).
template <typename Scalar>
struct DiscreteSystem {
  int n_nodes = 0;
  Scalar lambda = 0;
  Scalar mu = 0;
  bool deflated = false;
  Eigen::VectorX<Scalar> nodes;
  Eigen::MatrixX<Scalar> matrix;  // 2N x 2N
  Eigen::VectorX<Scalar> rhs1;    // field direction e1
  Eigen::VectorX<Scalar> rhs2;    // field direction e2
};

/// Jacobian-weighted densities solved per field direction; column l-1 holds
/// the direction-l density samples.
template <typename Scalar>
struct Densities {
  Eigen::MatrixX<Scalar> inner;  // N x 2
  Eigen::MatrixX<Scalar> outer;  // N x 2
};

/// Right-hand side for field direction l (1 or 2): minus the l-th component of
/// the Jacobian-weighted outward normal on each curve.
template <typename Scalar>
Eigen::VectorX<Scalar> rhs_vector(const KernelPair<Scalar>& pair, int l, int n) {
  if (l != 1 && l != 2) throw std::invalid_argument("rhs_vector: l must be 1 or 2");
  Eigen::VectorX<Scalar> g(2 * n);
  for (int k = 0; k < n; ++k) {
    const Scalar t = two_pi<Scalar> * Scalar(k) / Scalar(n);
    g(k) = -pair.inner().normal_jacobian(t)(l - 1);
    g(n + k) = -pair.outer().normal_jacobian(t)(l - 1);
  }
  return g;
}

/// Assemble the 2N x 2N system on N uniform nodes with the periodic trapezoid
/// rule (weight 2 pi / N on every kernel entry, diagonal entries included via
/// the curvature limit). With `deflate`, the rank-one mean projector is added
/// to both diagonal blocks; the right-hand sides are mean-free, so this leaves
/// the solution unchanged up to quadrature error while shifting the constant
/// mode away from zero in high-contrast limits.
template <typename Scalar>
DiscreteSystem<Scalar> assemble(const KernelPair<Scalar>& pair, const Material<Scalar>& mat,
                                int n, bool deflate = false) {
  if (n < 16 || n % 2 != 0 || n > 4096) {
    std::ostringstream msg;
    msg << "assemble: node count " << n << " must be even and in [16, 4096]";
    throw std::invalid_argument(msg.str());
  }

  const BoundarySamples<Scalar> in = sample_boundary(pair.inner(), n);
  const BoundarySamples<Scalar> out = sample_boundary(pair.outer(), n);
  const Scalar w = two_pi<Scalar> / Scalar(n);

  DiscreteSystem<Scalar> sys;
  sys.n_nodes = n;
  sys.lambda = mat.lambda();
  sys.mu = mat.mu();
  sys.deflated = deflate;
  sys.nodes = in.theta;
  sys.matrix.resize(2 * n, 2 * n);

  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Scalar a = (j == k)
                           ? in.curvature(j) * in.jacobian(j) / (2 * two_pi<Scalar>)
                           : detail::interaction<Scalar>(in.points.col(j), in.points.col(k),
                                                         in.normal_jac.col(j));
      const Scalar b = (j == k)
                           ? out.curvature(j) * out.jacobian(j) / (2 * two_pi<Scalar>)
                           : detail::interaction<Scalar>(out.points.col(j), out.points.col(k),
                                                         out.normal_jac.col(j));
      const Scalar c = detail::interaction<Scalar>(in.points.col(j), out.points.col(k),
                                                   in.normal_jac.col(j));
      const Scalar d = detail::interaction<Scalar>(out.points.col(j), in.points.col(k),
                                                   out.normal_jac.col(j));
      sys.matrix(j, k) = w * a;
      sys.matrix(j, n + k) = w * c;
      sys.matrix(n + j, k) = w * d;
      sys.matrix(n + j, n + k) = w * b;
    }
    sys.matrix(j, j) -= mat.lambda();
    sys.matrix(n + j, n + j) -= mat.mu();
  }

  if (deflate) {
    const Scalar p = Scalar(1) / Scalar(n);
    sys.matrix.topLeftCorner(n, n).array() += p;
    sys.matrix.bottomRightCorner(n, n).array() += p;
  }

  sys.rhs1 = rhs_vector(pair, 1, n);
  sys.rhs2 = rhs_vector(pair, 2, n);
  return sys;
}

/// Dense LU solve for both field directions. Fails on an estimated condition
/// number above 1e12 or on a residual above 1e-11 * |g|_inf.
template <typename Scalar>
Densities<Scalar> solve_densities(const DiscreteSystem<Scalar>& sys) {
  const int n = sys.n_nodes;
  Eigen::MatrixX<Scalar> g(2 * n, 2);
  g.col(0) = sys.rhs1;
  g.col(1) = sys.rhs2;

  const Eigen::PartialPivLU<Eigen::MatrixX<Scalar>> lu(sys.matrix);
  const Scalar rcond = lu.rcond();
  if (!(rcond > Scalar(1e-12))) {
    std::ostringstream msg;
    msg << "solve_densities: estimated condition number " << Scalar(1) / rcond
        << " exceeds 1e12 (contrast or geometry outside the perturbative regime)";
    throw SolverFailure(msg.str());
  }

  const Eigen::MatrixX<Scalar> f = lu.solve(g);
  const Scalar residual = (sys.matrix * f - g).template lpNorm<Eigen::Infinity>();
  const Scalar scale = g.template lpNorm<Eigen::Infinity>();
  if (!(residual <= Scalar(1e-11) * scale)) {
    std::ostringstream msg;
    msg << "solve_densities: residual " << residual << " above 1e-11 * " << scale;
    throw SolverFailure(msg.str());
  }

  Densities<Scalar> dens;
  dens.inner = f.topRows(n);
  dens.outer = f.bottomRows(n);
  return dens;
}

}  // namespace ptcoat
