#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace ptcoat {

template <typename Scalar>
inline constexpr Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);

/// Truncated real Fourier series  f(t) = a0 + sum_{k=1..K} (a_k cos kt + b_k sin kt).
///
/// Derivatives are exact (term-wise), so boundary normals and curvatures built on
/// top of it carry no numerical-differentiation error.
template <typename Scalar>
class TrigPolynomial {
  static_assert(std::is_floating_point_v<Scalar>);

public:
  using VectorX = Eigen::VectorX<Scalar>;

  TrigPolynomial() : a0_(0), cos_(), sin_() {}

  TrigPolynomial(Scalar a0, VectorX cos_coeffs, VectorX sin_coeffs)
      : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    const Eigen::Index nc = cos_.size(), ns = sin_.size();
    const Eigen::Index k = std::max(nc, ns);
    // conservativeResize leaves new tail entries uninitialized
    cos_.conservativeResize(k);
    cos_.tail(k - nc).setZero();
    sin_.conservativeResize(k);
    sin_.tail(k - ns).setZero();
  }

  /// Single harmonic  c cos(kt) + s sin(kt), k >= 0.
  static TrigPolynomial harmonic(int k, Scalar cos_amp, Scalar sin_amp) {
    if (k < 0) throw std::invalid_argument("TrigPolynomial: harmonic index must be >= 0");
    if (k == 0) return TrigPolynomial(cos_amp, VectorX(), VectorX());
    VectorX c = VectorX::Zero(k), s = VectorX::Zero(k);
    c(k - 1) = cos_amp;
    s(k - 1) = sin_amp;
    return TrigPolynomial(Scalar(0), std::move(c), std::move(s));
  }

  int degree() const { return static_cast<int>(cos_.size()); }
  Scalar constant_term() const { return a0_; }
  Scalar cos_coeff(int k) const { return (k >= 1 && k <= degree()) ? cos_(k - 1) : Scalar(0); }
  Scalar sin_coeff(int k) const { return (k >= 1 && k <= degree()) ? sin_(k - 1) : Scalar(0); }

  bool is_zero() const {
    return a0_ == Scalar(0) && (cos_.size() == 0 || (cos_.isZero(Scalar(0)) && sin_.isZero(Scalar(0))));
  }

  Scalar operator()(Scalar t) const {
    Scalar v = a0_;
    for (int k = 1; k <= degree(); ++k)
      v += cos_(k - 1) * std::cos(k * t) + sin_(k - 1) * std::sin(k * t);
    return v;
  }

  Scalar d1(Scalar t) const {
    Scalar v = 0;
    for (int k = 1; k <= degree(); ++k)
      v += k * (sin_(k - 1) * std::cos(k * t) - cos_(k - 1) * std::sin(k * t));
    return v;
  }

  Scalar d2(Scalar t) const {
    Scalar v = 0;
    for (int k = 1; k <= degree(); ++k)
      v -= Scalar(k) * k * (cos_(k - 1) * std::cos(k * t) + sin_(k - 1) * std::sin(k * t));
    return v;
  }

  /// The series of t -> f(t - phi).
  TrigPolynomial rotated(Scalar phi) const {
    VectorX c(cos_.size()), s(sin_.size());
    for (int k = 1; k <= degree(); ++k) {
      const Scalar ck = std::cos(k * phi), sk = std::sin(k * phi);
      c(k - 1) = cos_(k - 1) * ck - sin_(k - 1) * sk;
      s(k - 1) = cos_(k - 1) * sk + sin_(k - 1) * ck;
    }
    return TrigPolynomial(a0_, std::move(c), std::move(s));
  }

  TrigPolynomial scaled(Scalar factor) const {
    return TrigPolynomial(a0_ * factor, cos_ * factor, sin_ * factor);
  }

  TrigPolynomial operator+(const TrigPolynomial& other) const {
    const int k = std::max(degree(), other.degree());
    VectorX c = VectorX::Zero(k), s = VectorX::Zero(k);
    for (int i = 1; i <= k; ++i) {
      c(i - 1) = cos_coeff(i) + other.cos_coeff(i);
      s(i - 1) = sin_coeff(i) + other.sin_coeff(i);
    }
    return TrigPolynomial(a0_ + other.a0_, std::move(c), std::move(s));
  }

private:
  Scalar a0_;
  VectorX cos_;
  VectorX sin_;
};

/// Sup norms of f, f', f'' and their sum, by dense uniform sampling.
template <typename Scalar>
struct SmoothnessNorms {
  Scalar sup;
  Scalar sup_d1;
  Scalar sup_d2;
  Scalar total;  // sup + sup_d1 + sup_d2
};

template <typename Scalar>
SmoothnessNorms<Scalar> smoothness_norms(const TrigPolynomial<Scalar>& f) {
  const int n = std::max(4096, 64 * std::max(1, f.degree()));
  SmoothnessNorms<Scalar> out{0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const Scalar t = two_pi<Scalar> * Scalar(i) / Scalar(n);
    out.sup = std::max(out.sup, std::abs(f(t)));
    out.sup_d1 = std::max(out.sup_d1, std::abs(f.d1(t)));
    out.sup_d2 = std::max(out.sup_d2, std::abs(f.d2(t)));
  }
  out.total = out.sup + out.sup_d1 + out.sup_d2;
  return out;
}

/// Coating parameters identified with the series b1 + b2 cos(2t) + b3 sin(2t).
template <typename Scalar>
struct ShellParams {
  Scalar b1 = 0;
  Scalar b2 = 0;
  Scalar b3 = 0;

  TrigPolynomial<Scalar> to_series() const {
    using VectorX = Eigen::VectorX<Scalar>;
    VectorX c = VectorX::Zero(2), s = VectorX::Zero(2);
    c(1) = b2;
    s(1) = b3;
    return TrigPolynomial<Scalar>(b1, std::move(c), std::move(s));
  }

  Scalar max_abs() const { return std::max({std::abs(b1), std::abs(b2), std::abs(b3)}); }

  /// Parameters of the rotated coating t -> b(t - phi); the mean term is
  /// rotation-invariant and the degree-2 pair turns by 2*phi.
  ShellParams rotated(Scalar phi) const {
    const Scalar c = std::cos(2 * phi), s = std::sin(2 * phi);
    return ShellParams{b1, b2 * c - b3 * s, b2 * s + b3 * c};
  }
};

}  // namespace ptcoat
