// Command-line front end: polarization tensors, weakly neutral coatings,
// oracle verification and far-field sampling for 2D core-shell inclusions.
//
// Exit codes: 0 success, 1 verification checks failed, 2 config error,
// 3 coating did not converge, 4 linear solver failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ptcoat/config_io.hpp"
#include "ptcoat/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitSolver = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int n_override = 0;
  std::string mode_override;
};

ptcoat::RunConfig load_config(const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw ptcoat::ConfigError("cannot open config file " + args.config_path);
  ptcoat::json j;
  try {
    in >> j;
  } catch (const ptcoat::json::exception& e) {
    throw ptcoat::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ptcoat::RunConfig cfg = ptcoat::config_from_json(j);
  if (args.n_override > 0) {
    cfg.n = args.n_override;
    if (cfg.n < 16 || cfg.n % 2 != 0 || cfg.n > 4096)
      throw ptcoat::ConfigError("--N must be even and in [16, 4096]");
  }
  if (!args.mode_override.empty()) {
    if (args.mode_override != "shell" && args.mode_override != "core")
      throw ptcoat::ConfigError("--mode must be shell or core");
    cfg.mode = args.mode_override;
  }
  return cfg;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ptcoat::json pt_json(const ptcoat::PolarizationTensor<double>& pt) {
  return ptcoat::json{{"m11", pt.m11}, {"m12", pt.m12}, {"m21", pt.m21}, {"m22", pt.m22}};
}

int cmd_pt(const CommonArgs& args) {
  const ptcoat::RunConfig cfg = load_config(args);
  const auto base = ptcoat::base_config(cfg);
  const ptcoat::KernelPair<double> pair(ptcoat::StarBoundary<double>(base.r_i, cfg.h),
                                        ptcoat::StarBoundary<double>(base.r_e, cfg.b));
  const auto pt = ptcoat::polarization_tensor(pair, base.material, cfg.n, cfg.solver.deflate);
  const int n2 = std::min(2 * cfg.n, 4096);
  double delta = 0;
  if (n2 != cfg.n) {
    const auto fine = ptcoat::polarization_tensor(pair, base.material, n2, cfg.solver.deflate);
    delta = (pt.matrix() - fine.matrix()).cwiseAbs().maxCoeff();
  }

  ptcoat::json out = pt_json(pt);
  out["N"] = cfg.n;
  out["symmetry_defect"] = pt.symmetry_defect();
  out["refinement_delta"] = delta;
  out["config"] = ptcoat::resolved_config_json(cfg);
  write_text(std::filesystem::path(args.out_dir) / "pt.json", out.dump(2) + "\n");

  std::cout << "pt: m11=" << num(pt.m11) << " m12=" << num(pt.m12) << " m22=" << num(pt.m22)
            << "\n"
            << "symmetry defect = " << num(pt.symmetry_defect())
            << ", refinement delta (N=" << cfg.n << " vs " << n2 << ") = " << num(delta) << "\n";
  return kExitOk;
}

void write_boundary_csv(const std::filesystem::path& path, const ptcoat::RunConfig& cfg,
                        const ptcoat::KernelPair<double>& pair) {
  constexpr int samples = 512;
  std::string csv = "# config " + ptcoat::resolved_config_json(cfg).dump() + "\n";
  csv += "curve,theta,x,y\n";
  for (int i = 0; i < samples; ++i) {
    const double t = ptcoat::two_pi<double> * i / samples;
    const auto pc = pair.inner().point(t);
    csv += "core," + num(t) + "," + num(pc.x()) + "," + num(pc.y()) + "\n";
  }
  for (int i = 0; i < samples; ++i) {
    const double t = ptcoat::two_pi<double> * i / samples;
    const auto ps = pair.outer().point(t);
    csv += "shell," + num(t) + "," + num(ps.x()) + "," + num(ps.y()) + "\n";
  }
  write_text(path, csv);
}

int cmd_coat(const CommonArgs& args) {
  const ptcoat::RunConfig cfg = load_config(args);
  const auto base = ptcoat::base_config(cfg);
  if (!ptcoat::has_neutral_ratio(base.material))
    throw ptcoat::ConfigError("these conductivities admit no neutral configuration to coat around");
  const auto mode = cfg.mode == "shell" ? ptcoat::CoatMode::shell : ptcoat::CoatMode::core;
  const auto result = ptcoat::coat(cfg.h, base, ptcoat::coat_options(cfg), mode);

  ptcoat::json trace = ptcoat::json::array();
  for (const auto& it : result.trace)
    trace.push_back({{"b", {it.b.b1, it.b.b2, it.b.b3}},
                     {"residual", it.residual},
                     {"jacobian_det", it.jacobian_det}});
  ptcoat::json out{{"b", {result.b.b1, result.b.b2, result.b.b3}},
                   {"residual", result.residual},
                   {"iterations", result.iterations},
                   {"converged", result.converged},
                   {"mode", cfg.mode},
                   {"trace", trace},
                   {"config", ptcoat::resolved_config_json(cfg)}};
  write_text(std::filesystem::path(args.out_dir) / "coat.json", out.dump(2) + "\n");
  write_boundary_csv(std::filesystem::path(args.out_dir) / "boundary.csv", cfg,
                     ptcoat::coated_pair(cfg.h, result.b, base, mode));

  std::cout << "coat[" << cfg.mode << "]: b = (" << num(result.b.b1) << ", " << num(result.b.b2)
            << ", " << num(result.b.b3) << "), residual = " << num(result.residual) << ", "
            << result.iterations << " iterations, "
            << (result.converged ? "converged" : "NOT converged") << "\n";
  return result.converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const CommonArgs& args) {
  ptcoat::RunConfig cfg;
  if (!args.config_path.empty()) {
    cfg = load_config(args);
  } else {
    cfg.sigma_core = 5;
    cfg.sigma_shell = 2;
    cfg.sigma_matrix = 3;
    if (args.n_override > 0) cfg.n = args.n_override;
  }
  const auto base = ptcoat::base_config(cfg);
  const auto checks = ptcoat::run_verification(base, cfg.n);

  ptcoat::json report = ptcoat::json::array();
  for (const auto& c : checks) {
    report.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": measured " << num(c.measured)
              << " (tolerance " << num(c.tolerance) << ")\n";
  }
  const bool ok = ptcoat::all_pass(checks);
  ptcoat::json out{{"checks", report},
                   {"all_pass", ok},
                   {"config", ptcoat::resolved_config_json(cfg)}};
  write_text(std::filesystem::path(args.out_dir) / "verify.json", out.dump(2) + "\n");
  std::cout << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kExitOk : kExitChecksFailed;
}

int cmd_field(const CommonArgs& args) {
  const ptcoat::RunConfig cfg = load_config(args);
  const auto base = ptcoat::base_config(cfg);
  const ptcoat::KernelPair<double> pair(ptcoat::StarBoundary<double>(base.r_i, cfg.h),
                                        ptcoat::StarBoundary<double>(base.r_e, cfg.b));
  const auto dens =
      ptcoat::solve_densities(ptcoat::assemble(pair, base.material, cfg.n, cfg.solver.deflate));

  constexpr int n_angles = 64;
  const std::vector<double> rings = {2, 5, 10, 20};
  std::string csv = "# config " + ptcoat::resolved_config_json(cfg).dump() + "\n";
  csv += "x,y,l,value\n";
  std::vector<double> rms(rings.size(), 0.0);
  for (size_t r = 0; r < rings.size(); ++r) {
    const double radius = rings[r] * base.r_e;
    double sumsq = 0;
    for (int l = 1; l <= 2; ++l) {
      for (int s = 0; s < n_angles; ++s) {
        const double phi = ptcoat::two_pi<double> * s / n_angles;
        const Eigen::Vector2d x(radius * std::cos(phi), radius * std::sin(phi));
        const double value = ptcoat::far_field_perturbation(pair, dens, x, l);
        sumsq += value * value;
        csv += num(x.x()) + "," + num(x.y()) + "," + std::to_string(l) + "," + num(value) + "\n";
      }
    }
    rms[r] = std::sqrt(sumsq / (2 * n_angles));
  }
  for (size_t r = 0; r + 1 < rings.size(); ++r) {
    const double p = std::log(rms[r + 1] / rms[r]) / std::log(rings[r + 1] / rings[r]);
    csv += "# exponent," + num(rings[r]) + "," + num(rings[r + 1]) + "," + num(p) + "\n";
    std::cout << "decay exponent " << rings[r] << "r_e -> " << rings[r + 1] << "r_e: " << num(p)
              << "\n";
  }
  write_text(std::filesystem::path(args.out_dir) / "field.csv", csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization tensors and weakly neutral coatings of 2D core-shell inclusions"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path, "JSON run configuration");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory (default .)");
    cmd->add_option("--N", args.n_override, "override quadrature node count");
    return cmd;
  };

  auto* pt = add_common(app.add_subcommand("pt", "polarization tensor of an explicit (h, b) pair"),
                        true);
  auto* coat = add_common(
      app.add_subcommand("coat", "solve for the coating that cancels the tensor"), true);
  coat->add_option("--mode", args.mode_override, "shell (default) or core");
  auto* verify = add_common(
      app.add_subcommand("verify", "run the closed-form oracle suite"), false);
  auto* field = add_common(
      app.add_subcommand("field", "sample the exterior field perturbation on rings"), true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (pt->parsed()) return cmd_pt(args);
    if (coat->parsed()) return cmd_coat(args);
    if (verify->parsed()) return cmd_verify(args);
    if (field->parsed()) return cmd_field(args);
  } catch (const ptcoat::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ptcoat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
