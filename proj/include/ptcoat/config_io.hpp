#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "ptcoat/coater.hpp"
#include "ptcoat/material.hpp"

namespace ptcoat {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

/// Perturbations are serialized as {"a0": x, "cos": [a1..aK], "sin": [b1..bK]},
/// angles in radians; absent parts default to zero.
inline TrigPolynomial<double> perturbation_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("perturbation must be an object");
  reject_unknown_keys(j, {"a0", "cos", "sin"}, "perturbation");
  try {
    const double a0 = j.value("a0", 0.0);
    Eigen::VectorXd c(0), s(0);
    if (j.contains("cos")) {
      const auto& arr = j.at("cos");
      c.resize(arr.size());
      for (size_t i = 0; i < arr.size(); ++i) c(i) = arr.at(i).get<double>();
    }
    if (j.contains("sin")) {
      const auto& arr = j.at("sin");
      s.resize(arr.size());
      for (size_t i = 0; i < arr.size(); ++i) s(i) = arr.at(i).get<double>();
    }
    return TrigPolynomial<double>(a0, std::move(c), std::move(s));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad perturbation: ") + e.what());
  }
}

inline json perturbation_to_json(const TrigPolynomial<double>& f) {
  json c = json::array(), s = json::array();
  for (int k = 1; k <= f.degree(); ++k) {
    c.push_back(f.cos_coeff(k));
    s.push_back(f.sin_coeff(k));
  }
  return json{{"a0", f.constant_term()}, {"cos", c}, {"sin", s}};
}

struct SolverSettings {
  double tol = -1;      // < 0: 1e-10 * r_e^2
  int max_iter = 50;
  double fd_step = -1;  // < 0: 1e-5 * r_e
  double damping = 0.5;
  bool deflate = false;
};

/// One run: conductivities, radii, perturbations and solver knobs. `r_i`
/// defaults to the neutral radius for the given conductivities.
struct RunConfig {
  double sigma_core = 0, sigma_shell = 0, sigma_matrix = 0;
  double r_e = 1.0;
  std::optional<double> r_i;
  TrigPolynomial<double> h;
  TrigPolynomial<double> b;
  std::string mode = "shell";
  int n = 256;
  SolverSettings solver;
};

inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(j, {"sigma", "r_e", "r_i", "h", "b", "mode", "N", "solver"}, "config");
  RunConfig cfg;
  try {
    const auto& sigma = j.at("sigma");
    reject_unknown_keys(sigma, {"core", "shell", "matrix"}, "sigma");
    cfg.sigma_core = sigma.at("core").get<double>();
    cfg.sigma_shell = sigma.at("shell").get<double>();
    cfg.sigma_matrix = sigma.at("matrix").get<double>();
    cfg.r_e = j.value("r_e", 1.0);
    if (j.contains("r_i")) cfg.r_i = j.at("r_i").get<double>();
    if (j.contains("h")) cfg.h = perturbation_from_json(j.at("h"));
    if (j.contains("b")) cfg.b = perturbation_from_json(j.at("b"));
    cfg.mode = j.value("mode", std::string("shell"));
    cfg.n = j.value("N", 256);
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      reject_unknown_keys(s, {"tol", "max_iter", "fd_step", "damping", "deflate"}, "solver");
      cfg.solver.tol = s.value("tol", -1.0);
      cfg.solver.max_iter = s.value("max_iter", 50);
      cfg.solver.fd_step = s.value("fd_step", -1.0);
      cfg.solver.damping = s.value("damping", 0.5);
      cfg.solver.deflate = s.value("deflate", false);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  if (cfg.mode != "shell" && cfg.mode != "core")
    throw ConfigError("mode must be \"shell\" or \"core\"");
  if (cfg.n < 16 || cfg.n % 2 != 0 || cfg.n > 4096)
    throw ConfigError("N must be even and in [16, 4096]");
  if (!(cfg.r_e > 0)) throw ConfigError("r_e must be positive");
  if (cfg.r_i && !(*cfg.r_i > 0 && *cfg.r_i < cfg.r_e))
    throw ConfigError("r_i must lie in (0, r_e)");
  if (cfg.solver.max_iter < 1) throw ConfigError("solver.max_iter must be >= 1");
  if (!(cfg.solver.damping > 0 && cfg.solver.damping < 1))
    throw ConfigError("solver.damping must lie in (0, 1)");
  return cfg;
}

/// Concentric base of the run; throws when the conductivities are invalid or
/// (without explicit r_i) admit no neutral radius ratio.
inline BaseConfig<double> base_config(const RunConfig& cfg) {
  const Material<double> mat(cfg.sigma_core, cfg.sigma_shell, cfg.sigma_matrix);
  if (cfg.r_i) return BaseConfig<double>::with_inner_radius(mat, cfg.r_e, *cfg.r_i);
  return BaseConfig<double>::neutral(mat, cfg.r_e);
}

inline CoatOptions<double> coat_options(const RunConfig& cfg) {
  CoatOptions<double> opts;
  opts.quadrature_nodes = cfg.n;
  opts.tolerance = cfg.solver.tol;
  opts.max_iterations = cfg.solver.max_iter;
  opts.fd_step = cfg.solver.fd_step;
  opts.damping = cfg.solver.damping;
  opts.deflate = cfg.solver.deflate;
  return opts;
}

/// Fully resolved provenance record embedded in every output file: every
/// default materialized, including the computed inner radius.
inline json resolved_config_json(const RunConfig& cfg) {
  const BaseConfig<double> base = base_config(cfg);
  return json{{"sigma",
               {{"core", cfg.sigma_core}, {"shell", cfg.sigma_shell}, {"matrix", cfg.sigma_matrix}}},
              {"r_e", cfg.r_e},
              {"r_i", base.r_i},
              {"h", perturbation_to_json(cfg.h)},
              {"b", perturbation_to_json(cfg.b)},
              {"mode", cfg.mode},
              {"N", cfg.n},
              {"solver",
               {{"tol", coat_options(cfg).resolved_tolerance(cfg.r_e)},
                {"max_iter", cfg.solver.max_iter},
                {"fd_step", coat_options(cfg).resolved_fd_step(cfg.r_e)},
                {"damping", cfg.solver.damping},
                {"deflate", cfg.solver.deflate}}}};
}

}  // namespace ptcoat
