#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <stdexcept>
#include <vector>

#include "ptcoat/ptensor.hpp"

namespace ptcoat {

/// Which boundary carries the given perturbation and which one is being
/// solved for. `shell`: the core is given, the three-parameter coating is the
/// outer curve. `core`: roles swapped.
enum class CoatMode { shell, core };

template <typename Scalar>
struct CoatOptions {
  int quadrature_nodes = 256;
  Scalar tolerance = -1;  // < 0: defaults to 1e-10 * r_e^2
  int max_iterations = 50;
  Scalar fd_step = -1;  // < 0: defaults to 1e-5 * r_e
  Scalar damping = Scalar(0.5);
  bool deflate = false;

  Scalar resolved_tolerance(Scalar r_e) const {
    return tolerance > Scalar(0) ? tolerance : Scalar(1e-10) * r_e * r_e;
  }
  Scalar resolved_fd_step(Scalar r_e) const {
    return fd_step > Scalar(0) ? fd_step : Scalar(1e-5) * r_e;
  }
};

template <typename Scalar>
struct CoatIterate {
  ShellParams<Scalar> b;
  Scalar residual;      // Frobenius norm of the tensor at this iterate
  Scalar jacobian_det;  // 0 on the final entry (no step taken from it)
};

template <typename Scalar>
struct CoatResult {
  ShellParams<Scalar> b;
  Scalar residual = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<CoatIterate<Scalar>> trace;
};

/// Boundary pair for a given perturbation h and coating parameters b under the
/// given mode. Throws std::invalid_argument when the pair breaches the
/// nesting gate.
template <typename Scalar>
KernelPair<Scalar> coated_pair(const TrigPolynomial<Scalar>& h, const ShellParams<Scalar>& b,
                               const BaseConfig<Scalar>& cfg, CoatMode mode) {
  if (mode == CoatMode::shell)
    return KernelPair<Scalar>(StarBoundary<Scalar>(cfg.r_i, h),
                              StarBoundary<Scalar>(cfg.r_e, b.to_series()));
  return KernelPair<Scalar>(StarBoundary<Scalar>(cfg.r_i, b.to_series()),
                            StarBoundary<Scalar>(cfg.r_e, h));
}

template <typename Scalar>
PolarizationTensor<Scalar> coated_pt(const TrigPolynomial<Scalar>& h, const ShellParams<Scalar>& b,
                                     const BaseConfig<Scalar>& cfg, CoatMode mode, int n,
                                     bool deflate = false) {
  return polarization_tensor(coated_pair(h, b, cfg, mode), cfg.material, n, deflate);
}

/// The root-finding residual: the three independent tensor entries in the
/// order (m11, m22, m12).
template <typename Scalar>
Eigen::Vector3<Scalar> moment_vector(const PolarizationTensor<Scalar>& pt) {
  return Eigen::Vector3<Scalar>(pt.m11, pt.m22, pt.m12);
}

/// Central-difference Jacobian of the moment vector with respect to the three
/// coating parameters. A stencil point that breaches the nesting gate shrinks
/// the step by half, up to five times.
template <typename Scalar>
Eigen::Matrix3<Scalar> fd_jacobian(const TrigPolynomial<Scalar>& h, const ShellParams<Scalar>& b,
                                   const BaseConfig<Scalar>& cfg, const CoatOptions<Scalar>& opts,
                                   CoatMode mode) {
  Scalar step = opts.resolved_fd_step(cfg.r_e);
  for (int attempt = 0; attempt <= 5; ++attempt) {
    try {
      Eigen::Matrix3<Scalar> jac;
      for (int j = 0; j < 3; ++j) {
        ShellParams<Scalar> plus = b, minus = b;
        (j == 0 ? plus.b1 : j == 1 ? plus.b2 : plus.b3) += step;
        (j == 0 ? minus.b1 : j == 1 ? minus.b2 : minus.b3) -= step;
        const auto fp = moment_vector(coated_pt(h, plus, cfg, mode, opts.quadrature_nodes,
                                                opts.deflate));
        const auto fm = moment_vector(coated_pt(h, minus, cfg, mode, opts.quadrature_nodes,
                                                opts.deflate));
        jac.col(j) = (fp - fm) / (2 * step);
      }
      return jac;
    } catch (const std::invalid_argument&) {
      step /= 2;
    }
  }
  throw std::invalid_argument("fd_jacobian: stencil stays inadmissible after 5 step halvings");
}

/// Damped Newton iteration on the coating parameters, starting from zero.
/// A step is rejected (and damped) when it breaches the nesting gate or fails
/// to decrease the residual; running out of damping or iterations yields a
/// non-converged result with the full trace, not an error.
template <typename Scalar>
CoatResult<Scalar> coat(const TrigPolynomial<Scalar>& h, const BaseConfig<Scalar>& cfg,
                        const CoatOptions<Scalar>& opts, CoatMode mode) {
  const Scalar tol = opts.resolved_tolerance(cfg.r_e);
  if (!(tol > Scalar(0)) || opts.max_iterations < 1 || !(opts.resolved_fd_step(cfg.r_e) > Scalar(0)) ||
      !(opts.damping > Scalar(0) && opts.damping < Scalar(1)))
    throw std::invalid_argument("coat: invalid options");

  CoatResult<Scalar> result;
  ShellParams<Scalar> b{0, 0, 0};
  PolarizationTensor<Scalar> pt = coated_pt(h, b, cfg, mode, opts.quadrature_nodes, opts.deflate);
  Scalar residual = pt.frobenius_norm();

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (residual <= tol) break;

    const Eigen::Matrix3<Scalar> jac = fd_jacobian(h, b, cfg, opts, mode);
    result.trace.push_back({b, residual, jac.determinant()});
    const Eigen::Vector3<Scalar> delta = jac.partialPivLu().solve(-moment_vector(pt));

    bool accepted = false;
    Scalar t = 1;
    for (int halving = 0; halving <= 30; ++halving) {
      const ShellParams<Scalar> candidate{b.b1 + t * delta(0), b.b2 + t * delta(1),
                                          b.b3 + t * delta(2)};
      try {
        const auto candidate_pt =
            coated_pt(h, candidate, cfg, mode, opts.quadrature_nodes, opts.deflate);
        const Scalar candidate_residual = candidate_pt.frobenius_norm();
        if (candidate_residual < residual) {
          b = candidate;
          pt = candidate_pt;
          residual = candidate_residual;
          accepted = true;
          break;
        }
      } catch (const std::invalid_argument&) {
        // outside the nesting gate; damp and retry
      }
      t *= opts.damping;
    }
    result.iterations = iter + 1;
    if (!accepted) break;  // no admissible decreasing step left
  }

  result.b = b;
  result.residual = residual;
  result.converged = residual <= tol;
  result.trace.push_back({b, residual, Scalar(0)});
  return result;
}

/// Find the three-parameter coating of a given core perturbation.
template <typename Scalar>
CoatResult<Scalar> find_shell(const TrigPolynomial<Scalar>& h, const BaseConfig<Scalar>& cfg,
                              const CoatOptions<Scalar>& opts) {
  return coat(h, cfg, opts, CoatMode::shell);
}

/// Role-swapped problem: given the outer perturbation, find the core.
template <typename Scalar>
CoatResult<Scalar> find_core(const TrigPolynomial<Scalar>& h_outer, const BaseConfig<Scalar>& cfg,
                             const CoatOptions<Scalar>& opts) {
  return coat(h_outer, cfg, opts, CoatMode::core);
}

}  // namespace ptcoat
