#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "ptcoat/coater.hpp"
#include "ptcoat/oracles.hpp"

namespace ptcoat {

struct Check {
  std::string name;
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
};

namespace detail {

inline Check make_check(std::string name, double measured, double tolerance) {
  return Check{std::move(name), measured, tolerance, measured <= tolerance};
}

template <typename Scalar>
Eigen::VectorX<std::complex<Scalar>> mode_samples(int n, int m) {
  Eigen::VectorX<std::complex<Scalar>> v(n);
  for (int k = 0; k < n; ++k) {
    const Scalar t = two_pi<Scalar> * Scalar(k) / Scalar(n);
    v(k) = std::complex<Scalar>(std::cos(m * t), std::sin(m * t));
  }
  return v;
}

template <typename Scalar>
Eigen::VectorX<std::complex<Scalar>> apply_real(const Eigen::MatrixX<Scalar>& m,
                                                const Eigen::VectorX<std::complex<Scalar>>& v) {
  Eigen::VectorX<std::complex<Scalar>> out(m.rows());
  out.real() = m * v.real();
  out.imag() = m * v.imag();
  return out;
}

}  // namespace detail

/// Run the closed-form reference suite against the quadrature/solve pipeline
/// at the given concentric base configuration. Checks whose reference values
/// assume neutral radii fail (by design) when the configuration is labeled
/// neutral but is not.
template <typename Scalar>
std::vector<Check> run_verification(const BaseConfig<Scalar>& cfg, int n) {
  using VecC = Eigen::VectorX<std::complex<Scalar>>;
  std::vector<Check> checks;
  const Scalar re2 = cfg.r_e * cfg.r_e;

  const KernelPair<Scalar> base(StarBoundary<Scalar>(cfg.r_i), StarBoundary<Scalar>(cfg.r_e));
  const DiscreteSystem<Scalar> sys = assemble(base, cfg.material, n);
  const Densities<Scalar> dens = solve_densities(sys);

  // Tensor of the base configuration vanishes when the radii are neutral.
  {
    const auto pt = polarization_tensor(base, dens);
    checks.push_back(detail::make_check("neutral_pt_zero", pt.max_abs(), 1e-10 * re2));
  }

  // Cross blocks act diagonally on Fourier modes with weights -/+ rho^|m| / 2.
  {
    const auto c_block = sys.matrix.topRightCorner(n, n);
    const auto d_block = sys.matrix.bottomLeftCorner(n, n);
    Scalar err_c = 0, err_d = 0;
    for (int m = -8; m <= 8; ++m) {
      if (m == 0) continue;
      const VecC v = detail::mode_samples<Scalar>(n, m);
      const Scalar w = oracles::poisson_multiplier(m, cfg.rho) / 2;
      err_c = std::max(err_c,
                       (detail::apply_real<Scalar>(c_block, v) + w * v).cwiseAbs().maxCoeff());
      err_d = std::max(err_d,
                       (detail::apply_real<Scalar>(d_block, v) - w * v).cwiseAbs().maxCoeff());
    }
    checks.push_back(detail::make_check("multiplier_inner_flux", err_c, 1e-10));
    checks.push_back(detail::make_check("multiplier_outer_flux", err_d, 1e-10));
  }

  // Total flux through the outer curve of a unit layer on the inner one is 1.
  {
    const Scalar err = (sys.matrix.bottomLeftCorner(n, n).rowwise().sum().array() - Scalar(1))
                           .abs()
                           .maxCoeff();
    checks.push_back(detail::make_check("unit_layer_flux", err, 1e-12));
  }

  // Solved densities against the separated closed form psi_l * V1.
  {
    const Eigen::Vector2<Scalar> v1 = oracles::base_density_amplitude(cfg);
    Scalar err = 0;
    for (int k = 0; k < n; ++k) {
      const Scalar t = sys.nodes(k);
      err = std::max({err, std::abs(dens.inner(k, 0) - v1(0) * std::cos(t)),
                      std::abs(dens.outer(k, 0) - v1(1) * std::cos(t)),
                      std::abs(dens.inner(k, 1) - v1(0) * std::sin(t)),
                      std::abs(dens.outer(k, 1) - v1(1) * std::sin(t))});
    }
    checks.push_back(detail::make_check("analytic_density", err, 1e-11));
  }

  // Finite-difference coating Jacobian against the closed form.
  {
    CoatOptions<Scalar> opts;
    opts.quadrature_nodes = n;
    const Eigen::Matrix3<Scalar> fd =
        fd_jacobian(TrigPolynomial<Scalar>(), ShellParams<Scalar>{}, cfg, opts, CoatMode::shell);
    const Eigen::Matrix3<Scalar> an = oracles::coating_jacobian(cfg);
    Scalar rel = 0, zeros = 0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        if (an(r, c) != Scalar(0))
          rel = std::max(rel, std::abs(fd(r, c) - an(r, c)) / std::abs(an(r, c)));
        else
          zeros = std::max(zeros, std::abs(fd(r, c)));
      }
    checks.push_back(detail::make_check("coating_jacobian_entries", rel, 1e-6));
    checks.push_back(detail::make_check("coating_jacobian_zeros", zeros, 1e-8));
    const Scalar det_ref = oracles::coating_jacobian_det(cfg);
    checks.push_back(detail::make_check("coating_jacobian_det",
                                        std::abs(fd.determinant() - det_ref) / std::abs(det_ref),
                                        1e-5));
  }

  // Finite differences of the assembled block operator in each coating
  // parameter against the closed-form mode actions.
  {
    const Scalar step = Scalar(1e-6) * cfg.r_e;
    Scalar err_block = 0, err_outer = 0;
    const VecC mode1 = detail::mode_samples<Scalar>(n, 1);
    for (int j = 1; j <= 3; ++j) {
      ShellParams<Scalar> bp{}, bm{};
      (j == 1 ? bp.b1 : j == 2 ? bp.b2 : bp.b3) = step;
      (j == 1 ? bm.b1 : j == 2 ? bm.b2 : bm.b3) = -step;
      const auto sys_p = assemble(KernelPair<Scalar>(StarBoundary<Scalar>(cfg.r_i),
                                                     StarBoundary<Scalar>(cfg.r_e, bp.to_series())),
                                  cfg.material, n);
      const auto sys_m = assemble(KernelPair<Scalar>(StarBoundary<Scalar>(cfg.r_i),
                                                     StarBoundary<Scalar>(cfg.r_e, bm.to_series())),
                                  cfg.material, n);
      const Eigen::MatrixX<Scalar> diff = (sys_p.matrix - sys_m.matrix) / (2 * step);

      for (const auto& [a, b] : {std::pair<Scalar, Scalar>{1, 0}, {0, 1}, {Scalar(0.8), Scalar(-0.6)}}) {
        VecC v(2 * n);
        v.head(n) = a * mode1;
        v.tail(n) = b * mode1;
        const VecC got = detail::apply_real<Scalar>(diff, v);
        for (int k = 0; k < n; ++k) {
          const auto want = oracles::block_derivative_action(j, a, b, cfg, sys.nodes(k));
          err_block = std::max({err_block, std::abs(got(k) - want(0)),
                                std::abs(got(n + k) - want(1))});
        }
      }

      const VecC got_outer =
          detail::apply_real<Scalar>(diff.bottomRightCorner(n, n), mode1);
      for (int k = 0; k < n; ++k)
        err_outer = std::max(err_outer,
                             std::abs(got_outer(k) - oracles::outer_self_derivative_action(
                                                         j, cfg.r_e, sys.nodes(k))));
    }
    checks.push_back(detail::make_check("block_derivative_actions", err_block, 1e-5));
    checks.push_back(detail::make_check("outer_self_derivative_actions", err_outer, 1e-5));
  }

  // Quadrature tensor against the radial transmission series on deliberately
  // non-neutral concentric disks.
  {
    const Scalar ri = Scalar(0.75) * cfg.r_i;
    const KernelPair<Scalar> disks(StarBoundary<Scalar>(ri), StarBoundary<Scalar>(cfg.r_e));
    const auto pt = polarization_tensor(disks, cfg.material, n);
    const auto ref = oracles::disk_pt(ri, cfg.r_e, cfg.material.sigma_core(),
                                      cfg.material.sigma_shell(), cfg.material.sigma_matrix());
    const Scalar err = std::max({std::abs(pt.m11 - ref.m11) / std::abs(ref.m11),
                                 std::abs(pt.m22 - ref.m22) / std::abs(ref.m22),
                                 std::abs(pt.m12) / std::abs(ref.m11),
                                 std::abs(pt.m21) / std::abs(ref.m11)});
    checks.push_back(detail::make_check("disk_series_consistency", err, 1e-8));
  }

  // Density convergence under node doubling on a perturbed pair: each
  // doubling must shrink the common-node disagreement by 10x (or reach the
  // quadrature floor).
  {
    const TrigPolynomial<Scalar> h =
        TrigPolynomial<Scalar>::harmonic(3, Scalar(0.02) * cfg.r_e, 0);
    const ShellParams<Scalar> b{Scalar(0.01) * cfg.r_e, Scalar(0.005) * cfg.r_e,
                                Scalar(-0.004) * cfg.r_e};
    const KernelPair<Scalar> pair(StarBoundary<Scalar>(cfg.r_i, h),
                                  StarBoundary<Scalar>(cfg.r_e, b.to_series()));
    const int n2 = std::min(2 * n, 4096), n4 = std::min(4 * n, 4096);
    const auto f1 = solve_densities(assemble(pair, cfg.material, n));
    const auto f2 = solve_densities(assemble(pair, cfg.material, n2));
    const auto f4 = solve_densities(assemble(pair, cfg.material, n4));
    auto common_diff = [](const Densities<Scalar>& coarse, const Densities<Scalar>& fine) {
      const int nc = static_cast<int>(coarse.inner.rows());
      const int stride = static_cast<int>(fine.inner.rows()) / nc;
      Scalar d = 0;
      for (int k = 0; k < nc; ++k)
        for (int l = 0; l < 2; ++l)
          d = std::max({d, std::abs(coarse.inner(k, l) - fine.inner(stride * k, l)),
                        std::abs(coarse.outer(k, l) - fine.outer(stride * k, l))});
      return d;
    };
    const Scalar d1 = common_diff(f1, f2);
    const Scalar d2 = common_diff(f2, f4);
    const Scalar scale = std::max(f4.inner.cwiseAbs().maxCoeff(), f4.outer.cwiseAbs().maxCoeff());
    const Scalar floor = Scalar(1e-12) * std::max(Scalar(1), scale);
    checks.push_back(detail::make_check("spectral_convergence", double(d2),
                                        double(std::max(d1 / 10, floor))));

    Scalar mean_defect = 0;
    for (int l = 0; l < 2; ++l) {
      const Scalar norm = std::max({f2.inner.col(l).norm(), f2.outer.col(l).norm(), Scalar(1e-30)});
      mean_defect = std::max({mean_defect, std::abs(f2.inner.col(l).mean()) / norm,
                              std::abs(f2.outer.col(l).mean()) / norm});
    }
    checks.push_back(detail::make_check("density_zero_mean", mean_defect, 1e-8));
  }

  return checks;
}

inline bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace ptcoat
