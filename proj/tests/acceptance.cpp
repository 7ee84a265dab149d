// Acceptance suite: one pass/fail line per criterion, all tolerances pinned.
// Exit code is the number of failing lines.
//
// Two lines (5a and 9b) compare against stated reference identities that the
// validated computation contradicts; they are expected to report FAIL, with
// the measured and stated values printed side by side. The companion lines
// (5c and 9c) assert the identities that two independent implementations
// agree on. See ptcoat/oracles.hpp for the validated closed forms.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "ptcoat/coater.hpp"
#include "ptcoat/oracles.hpp"
#include "ptcoat/verify.hpp"

using namespace ptcoat;
using C = std::complex<double>;

namespace {

constexpr double pi = EIGEN_PI;
int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Eigen::VectorXcd mode(int n, int m) {
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) {
    const double t = two_pi<double> * k / n;
    v(k) = C(std::cos(m * t), std::sin(m * t));
  }
  return v;
}

Eigen::VectorXcd matvec(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(m.rows());
  out.real() = m * v.real();
  out.imag() = m * v.imag();
  return out;
}

double rms_ring(const KernelPair<double>& pair, const Densities<double>& dens, double radius) {
  double sumsq = 0;
  const int n_angles = 64;
  for (int l = 1; l <= 2; ++l)
    for (int s = 0; s < n_angles; ++s) {
      const double phi = two_pi<double> * s / n_angles;
      const double v = far_field_perturbation(
          pair, dens, Eigen::Vector2d(radius * std::cos(phi), radius * std::sin(phi)), l);
      sumsq += v * v;
    }
  return std::sqrt(sumsq / (2 * n_angles));
}

}  // namespace

int main() {
  const auto suite_start = std::chrono::steady_clock::now();
  const int n = 256;
  const Material<double> mat(5, 2, 3);
  const auto cfg = BaseConfig<double>::neutral(mat, 1.0);
  const KernelPair<double> base((StarBoundary<double>(cfg.r_i)), StarBoundary<double>(cfg.r_e));

  // ---- 1: vanishing tensor at the neutral base --------------------------
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pt = polarization_tensor(base, mat, n);
    const double elapsed = seconds_since(t0);
    report("C1 neutral zero", pt.max_abs() <= 1e-10 && elapsed < 1.0,
           "max |entry| = " + fmt(pt.max_abs()) + " (tol 1e-10), " + fmt(elapsed) + " s (< 1 s)");
  }

  const auto sys = assemble(base, mat, n);
  const auto dens = solve_densities(sys);

  // ---- 2: cross-block mode multipliers (nonzero modes) ------------------
  {
    const auto c_block = sys.matrix.topRightCorner(n, n);
    const auto d_block = sys.matrix.bottomLeftCorner(n, n);
    double err = 0;
    for (int m = -8; m <= 8; ++m) {
      if (m == 0) continue;
      const auto v = mode(n, m);
      const double w = oracles::poisson_multiplier(m, cfg.rho) / 2;
      err = std::max(err, (matvec(c_block, v) + w * v).cwiseAbs().maxCoeff());
      err = std::max(err, (matvec(d_block, v) - w * v).cwiseAbs().maxCoeff());
    }
    report("C2 mode multipliers |m|<=8", err <= 1e-10, "max error = " + fmt(err) + " (tol 1e-10)");
  }

  // ---- 3: solved densities against the separated closed form ------------
  {
    const auto v1 = oracles::base_density_amplitude(cfg);
    double err = 0;
    for (int k = 0; k < n; ++k) {
      const double t = sys.nodes(k);
      err = std::max({err, std::abs(dens.inner(k, 0) - v1(0) * std::cos(t)),
                      std::abs(dens.outer(k, 0) - v1(1) * std::cos(t)),
                      std::abs(dens.inner(k, 1) - v1(0) * std::sin(t)),
                      std::abs(dens.outer(k, 1) - v1(1) * std::sin(t))});
    }
    report("C3 analytic density", err <= 1e-11, "max node error = " + fmt(err) + " (tol 1e-11)");
  }

  // ---- 4: finite-difference coating jacobian vs closed form -------------
  CoatOptions<double> opts;
  opts.quadrature_nodes = n;
  {
    const auto fd = fd_jacobian(TrigPolynomial<double>(), ShellParams<double>{}, cfg, opts,
                                CoatMode::shell);
    const auto an = oracles::coating_jacobian(cfg);
    double rel = 0, zeros = 0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        if (an(r, c) != 0.0)
          rel = std::max(rel, std::abs(fd(r, c) - an(r, c)) / std::abs(an(r, c)));
        else
          zeros = std::max(zeros, std::abs(fd(r, c)));
      }
    const double det_ref = oracles::coating_jacobian_det(cfg);
    const double det_err = std::abs(fd.determinant() - det_ref) / std::abs(det_ref);
    report("C4 coating jacobian",
           rel <= 1e-6 && zeros <= 1e-8 && det_err <= 1e-5,
           "entry rel = " + fmt(rel) + " (tol 1e-6), zeros = " + fmt(zeros) +
               " (tol 1e-8), det rel = " + fmt(det_err) + " (tol 1e-5, det = " +
               fmt(det_ref) + ")");
  }

  // ---- 5: derivative actions of the assembled operator ------------------
  {
    // stated reference actions this suite is pinned to
    auto stated = [&](int j, double a, double b, double eta) -> Eigen::Vector2cd {
      const double rho = cfg.rho, r_i = cfg.r_i, rho2 = rho * rho;
      const C e1(std::cos(eta), std::sin(eta));
      const C e3 = e1 * e1 * e1, em1 = std::conj(e1), i(0, 1);
      switch (j) {
        case 1:
          return {b / (2 * r_i) * e1, -a / (2 * r_i) * e1};
        case 2:
          return {(3 * b * rho2 * e3 + b * em1) / (4 * r_i),
                  (-a * (1 + 2 * rho2) * e3 + (-a * (1 - 2 * rho2) + 2 * b * rho) * em1) /
                      (4 * r_i)};
        default:
          return {i * (-3 * b * rho2 * e3 + b * em1) / (4 * r_i),
                  i * (a * (1 + 2 * rho2) * e3 + (-a * (1 - 2 * rho2) + 2 * b * rho) * em1) /
                      (4 * r_i)};
      }
    };

    const double step = 1e-6;
    double err_stated = 0, err_derived = 0, err_outer = 0;
    const auto mode1 = mode(n, 1);
    for (int j = 1; j <= 3; ++j) {
      ShellParams<double> bp{}, bm{};
      (j == 1 ? bp.b1 : j == 2 ? bp.b2 : bp.b3) = step;
      (j == 1 ? bm.b1 : j == 2 ? bm.b2 : bm.b3) = -step;
      const auto sys_p =
          assemble(KernelPair<double>(StarBoundary<double>(cfg.r_i),
                                      StarBoundary<double>(cfg.r_e, bp.to_series())),
                   mat, n);
      const auto sys_m =
          assemble(KernelPair<double>(StarBoundary<double>(cfg.r_i),
                                      StarBoundary<double>(cfg.r_e, bm.to_series())),
                   mat, n);
      const Eigen::MatrixXd diff = (sys_p.matrix - sys_m.matrix) / (2 * step);

      for (const auto& [a, b] :
           {std::pair<double, double>{1, 0}, {0, 1}, {0.8, -0.6}}) {
        Eigen::VectorXcd v(2 * n);
        v.head(n) = a * mode1;
        v.tail(n) = b * mode1;
        const auto got = matvec(diff, v);
        for (int k = 0; k < n; ++k) {
          const auto ref_stated = stated(j, a, b, sys.nodes(k));
          const auto ref_derived = oracles::block_derivative_action(j, a, b, cfg, sys.nodes(k));
          err_stated = std::max({err_stated, std::abs(got(k) - ref_stated(0)),
                                 std::abs(got(n + k) - ref_stated(1))});
          err_derived = std::max({err_derived, std::abs(got(k) - ref_derived(0)),
                                  std::abs(got(n + k) - ref_derived(1))});
        }
      }

      const auto got_outer = matvec(diff.bottomRightCorner(n, n), mode1);
      for (int k = 0; k < n; ++k)
        err_outer = std::max(err_outer,
                             std::abs(got_outer(k) - oracles::outer_self_derivative_action(
                                                         j, cfg.r_e, sys.nodes(k))));
    }
    report("C5a block derivative actions vs stated reference", err_stated <= 1e-5,
           "max error = " + fmt(err_stated) +
               " (tol 1e-5; stated reference inconsistent with the validated computation)");
    report("C5b outer self-block derivative actions", err_outer <= 1e-5,
           "max error = " + fmt(err_outer) + " (tol 1e-5)");
    report("C5c block derivative actions vs derived closed form", err_derived <= 1e-5,
           "max error = " + fmt(err_derived) + " (tol 1e-5)");
  }

  // ---- 6: concentric-disk radial series ----------------------------------
  {
    const KernelPair<double> disks((StarBoundary<double>(0.5)), StarBoundary<double>(1.0));
    const auto pt = polarization_tensor(disks, mat, n);
    const auto ref = oracles::disk_pt(0.5, 1.0, 5.0, 2.0, 3.0);
    const double err = std::max({std::abs(pt.m11 - ref.m11) / std::abs(ref.m11),
                                 std::abs(pt.m22 - ref.m22) / std::abs(ref.m22),
                                 std::abs(pt.m12) / std::abs(ref.m11),
                                 std::abs(pt.m21) / std::abs(ref.m11)});
    report("C6 concentric-disk oracle", err <= 1e-8,
           "max rel error = " + fmt(err) + " (tol 1e-8)");
  }

  // ---- 7: coating run ----------------------------------------------------
  const auto h = TrigPolynomial<double>::harmonic(3, 0.02, 0);
  CoatResult<double> coat_result;
  {
    const auto t0 = std::chrono::steady_clock::now();
    coat_result = find_shell(h, cfg, opts);
    const double elapsed = seconds_since(t0);
    const double refined = coated_pt(h, coat_result.b, cfg, CoatMode::shell, 2 * n).frobenius_norm();
    report("C7 coating run",
           coat_result.converged && coat_result.iterations <= 20 &&
               coat_result.residual <= 1e-8 && refined <= 1e-7 && elapsed < 10.0,
           std::to_string(coat_result.iterations) + " iterations (<= 20), residual = " +
               fmt(coat_result.residual) + " (tol 1e-8), at 2N = " + fmt(refined) +
               " (tol 1e-7), " + fmt(elapsed) + " s (< 10 s)");
  }

  // ---- 8: far-field decay of the coated structure ------------------------
  {
    const auto pair = coated_pair(h, coat_result.b, cfg, CoatMode::shell);
    const auto cdens = solve_densities(assemble(pair, mat, n));
    const double a10 = rms_ring(pair, cdens, 10 * cfg.r_e);
    const double a20 = rms_ring(pair, cdens, 20 * cfg.r_e);
    const double ratio = a20 / a10;
    report("C8 far-field decay", ratio >= 0.225 && ratio <= 0.275,
           "ring amplitude ratio 20r/10r = " + fmt(ratio) + " (window [0.225, 0.275])");
  }

  // ---- 9: swapped mode ----------------------------------------------------
  {
    const auto res = find_core(h, cfg, opts);
    const double refined = coated_pt(h, res.b, cfg, CoatMode::core, 2 * n).frobenius_norm();
    report("C9a swapped-mode coating run",
           res.converged && res.iterations <= 20 && res.residual <= 1e-8 && refined <= 1e-7,
           std::to_string(res.iterations) + " iterations (<= 20), residual = " +
               fmt(res.residual) + " (tol 1e-8), at 2N = " + fmt(refined) + " (tol 1e-7)");

    const auto js = fd_jacobian(TrigPolynomial<double>(), ShellParams<double>{}, cfg, opts,
                                CoatMode::shell);
    const auto jc = fd_jacobian(TrigPolynomial<double>(), ShellParams<double>{}, cfg, opts,
                                CoatMode::core);
    const double ratio = jc.determinant() / js.determinant();
    const double stated = -std::pow(cfg.r_e / cfg.r_i, 3);
    const double err_stated = std::abs(ratio - stated) / std::abs(stated);
    report("C9b jacobian determinant ratio vs stated reference", err_stated <= 1e-5,
           "measured det ratio = " + fmt(ratio) + ", stated = " + fmt(stated) +
               " (tol 1e-5; stated reference inconsistent with the validated computation)");
    const double derived = -std::pow(cfg.r_e / cfg.r_i, 7);
    const double err_derived = std::abs(ratio - derived) / std::abs(derived);
    report("C9c jacobian determinant ratio vs derived value", err_derived <= 1e-5,
           "measured det ratio = " + fmt(ratio) + ", derived = " + fmt(derived) + " (tol 1e-5)");
  }

  // ---- 10: property battery on five configurations -----------------------
  {
    struct Config {
      double sc, ss, sm, r_e;
      TrigPolynomial<double> h;
      ShellParams<double> b;
      double cscale;
    };
    const std::vector<Config> battery = {
        {5, 2, 3, 1.0,
         TrigPolynomial<double>::harmonic(3, 0.02, 0) + TrigPolynomial<double>::harmonic(2, 0.01, 0),
         {0.01, 0.004, -0.006}, 7.0},
        {5, 2, 3, 1.0,
         TrigPolynomial<double>::harmonic(1, 0.015, 0) + TrigPolynomial<double>::harmonic(4, 0, 0.01),
         {0.0, 0.012, 0.008}, 0.137},
        {10, 3, 5, 1.5, TrigPolynomial<double>::harmonic(2, 0.03, -0.015),
         {0.015, -0.009, 0.006}, 3.0},
        {1, 4, 2, 0.8,
         TrigPolynomial<double>::harmonic(3, 0, 0.01) + TrigPolynomial<double>::harmonic(1, 0.005, 0),
         {-0.004, 0.0024, 0.0016}, 0.731},
        {2, 5, 3, 1.2, TrigPolynomial<double>::harmonic(4, 0.024, 0),
         {0.006, -0.0048, 0.0048}, 11.0}};

    int passed = 0, total = 0;
    double worst_sym = 0, worst_scale = 0, worst_cond = 0, worst_rot = 0, worst_conv = 1e300;
    const int nb = 128;
    for (const auto& c : battery) {
      const Material<double> m(c.sc, c.ss, c.sm);
      const auto bc = BaseConfig<double>::neutral(m, c.r_e);
      const StarBoundary<double> inner(bc.r_i, c.h);
      const StarBoundary<double> outer(bc.r_e, c.b.to_series());
      const KernelPair<double> pair(inner, outer);
      const auto pt = polarization_tensor(pair, m, nb);
      const double scale = std::max(c.r_e * c.r_e, pt.max_abs());

      total += 5;
      // symmetry
      const double sym = pt.symmetry_defect() / std::max(1.0, pt.max_abs());
      worst_sym = std::max(worst_sym, sym);
      if (sym <= 1e-10) ++passed;
      // scale covariance
      const KernelPair<double> doubled(inner.scaled(2.0), outer.scaled(2.0));
      const auto pt2 = polarization_tensor(doubled, m, nb);
      const double serr = (pt2.matrix() - 4.0 * pt.matrix()).cwiseAbs().maxCoeff() / (4 * scale);
      worst_scale = std::max(worst_scale, serr);
      if (serr <= 1e-9) ++passed;
      // conductivity-scale invariance
      const Material<double> ms(c.sc * c.cscale, c.ss * c.cscale, c.sm * c.cscale);
      const auto pts = polarization_tensor(pair, ms, nb);
      const double cerr = (pts.matrix() - pt.matrix()).cwiseAbs().maxCoeff() / scale;
      worst_cond = std::max(worst_cond, cerr);
      if (cerr <= 1e-12) ++passed;
      // rotation equivariance at a grid-multiple angle
      const double phi = two_pi<double> * 16 / nb;
      const KernelPair<double> rotated(inner.rotated(phi), outer.rotated(phi));
      const auto ptr = polarization_tensor(rotated, m, nb);
      Eigen::Matrix2d rot;
      rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
      const double rerr =
          (ptr.matrix() - rot * pt.matrix() * rot.transpose()).cwiseAbs().maxCoeff() / scale;
      worst_rot = std::max(worst_rot, rerr);
      if (rerr <= 1e-10) ++passed;
      // spectral convergence of the solved densities
      const auto f32 = solve_densities(assemble(pair, m, 32));
      const auto f64 = solve_densities(assemble(pair, m, 64));
      const auto f128 = solve_densities(assemble(pair, m, 128));
      auto diff = [](const Densities<double>& coarse, const Densities<double>& fine) {
        const int nc = static_cast<int>(coarse.inner.rows());
        const int s = static_cast<int>(fine.inner.rows()) / nc;
        double d = 0;
        for (int k = 0; k < nc; ++k)
          for (int l = 0; l < 2; ++l)
            d = std::max({d, std::abs(coarse.inner(k, l) - fine.inner(s * k, l)),
                          std::abs(coarse.outer(k, l) - fine.outer(s * k, l))});
        return d;
      };
      const double d1 = diff(f32, f64), d2 = diff(f64, f128);
      const double conv = d1 / std::max(d2, 1e-300);
      worst_conv = std::min(worst_conv, conv);
      if (conv >= 10) ++passed;
    }
    report("C10 property battery", passed == total,
           std::to_string(passed) + "/" + std::to_string(total) +
               " checks on 5 configurations (worst: symmetry " + fmt(worst_sym) +
               ", scale " + fmt(worst_scale) + ", conductivity " + fmt(worst_cond) +
               ", rotation " + fmt(worst_rot) + ", convergence ratio " + fmt(worst_conv) + ")");
  }

  std::printf("%d criterion line(s) failing, %.1f s total\n", failures,
              seconds_since(suite_start));
  return failures;
}
