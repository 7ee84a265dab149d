#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace ptcoat {

/// Conductivities of core, shell and matrix, with the derived contrast
/// parameters
///   lambda = (sc + ss) / (2 (sc - ss)),   mu = (ss + sm) / (2 (ss - sm)).
/// Positivity of the three conductivities guarantees |lambda|, |mu| > 1/2,
/// which keeps the contrast-shifted boundary operators invertible.
template <typename Scalar>
class Material {
  static_assert(std::is_floating_point_v<Scalar>);

public:
  Material(Scalar sigma_core, Scalar sigma_shell, Scalar sigma_matrix)
      : sigma_core_(sigma_core), sigma_shell_(sigma_shell), sigma_matrix_(sigma_matrix) {
    if (!(sigma_core > Scalar(0) && sigma_shell > Scalar(0) && sigma_matrix > Scalar(0)))
      throw std::invalid_argument("Material: conductivities must be positive");
    if (sigma_core == sigma_shell)
      throw std::invalid_argument("Material: core and shell conductivities must differ");
    if (sigma_shell == sigma_matrix)
      throw std::invalid_argument("Material: shell and matrix conductivities must differ");
    lambda_ = (sigma_core + sigma_shell) / (2 * (sigma_core - sigma_shell));
    mu_ = (sigma_shell + sigma_matrix) / (2 * (sigma_shell - sigma_matrix));
  }

  Scalar sigma_core() const { return sigma_core_; }
  Scalar sigma_shell() const { return sigma_shell_; }
  Scalar sigma_matrix() const { return sigma_matrix_; }
  Scalar lambda() const { return lambda_; }
  Scalar mu() const { return mu_; }

private:
  Scalar sigma_core_, sigma_shell_, sigma_matrix_;
  Scalar lambda_, mu_;
};

/// Squared radius ratio (r_i/r_e)^2 at which concentric disks with these
/// conductivities leave the exterior field unperturbed. Throws when no such
/// ratio exists in (0,1).
template <typename Scalar>
Scalar neutral_ratio_squared(const Material<Scalar>& mat) {
  const Scalar sc = mat.sigma_core(), ss = mat.sigma_shell(), sm = mat.sigma_matrix();
  const Scalar ratio = ((ss + sc) * (ss - sm)) / ((ss - sc) * (ss + sm));
  if (!(ratio > Scalar(0) && ratio < Scalar(1))) {
    std::ostringstream msg;
    msg << "no neutral radius ratio for sigma=(" << sc << ", " << ss << ", " << sm
        << "): ratio " << ratio << " is outside (0,1)";
    throw std::domain_error(msg.str());
  }
  return ratio;
}

template <typename Scalar>
bool has_neutral_ratio(const Material<Scalar>& mat) {
  const Scalar sc = mat.sigma_core(), ss = mat.sigma_shell(), sm = mat.sigma_matrix();
  const Scalar ratio = ((ss + sc) * (ss - sm)) / ((ss - sc) * (ss + sm));
  return ratio > Scalar(0) && ratio < Scalar(1);
}

/// A concentric base configuration: outer radius r_e and inner radius
/// r_i = rho * r_e. `neutral` picks rho from the conductivities, in which case
/// lambda = -mu rho^2; `with_inner_radius` accepts any ratio in (0,1), which is
/// what negative-control checks use.
template <typename Scalar>
struct BaseConfig {
  Material<Scalar> material;
  Scalar r_e;
  Scalar rho;
  Scalar r_i;

  static BaseConfig neutral(const Material<Scalar>& mat, Scalar r_e) {
    if (!(r_e > Scalar(0))) throw std::invalid_argument("BaseConfig: r_e must be positive");
    const Scalar rho = std::sqrt(neutral_ratio_squared(mat));
    return BaseConfig{mat, r_e, rho, rho * r_e};
  }

  static BaseConfig with_inner_radius(const Material<Scalar>& mat, Scalar r_e, Scalar r_i) {
    if (!(r_e > Scalar(0) && r_i > Scalar(0) && r_i < r_e))
      throw std::invalid_argument("BaseConfig: need 0 < r_i < r_e");
    return BaseConfig{mat, r_e, r_i / r_e, r_i};
  }

  /// Whether the radii actually satisfy the neutrality relation.
  bool is_neutral(Scalar rel_tol = Scalar(1e-12)) const {
    return has_neutral_ratio(material) &&
           std::abs(rho * rho - neutral_ratio_squared(material)) <= rel_tol;
  }
};

}  // namespace ptcoat
