#pragma once

#include <array>
#include <complex>
#include <span>

namespace cvtele {

/// Highest total derivative order tracked at the phase-space origin.
inline constexpr int kSeriesOrder = 6;

/// Truncated bivariate Taylor series of a characteristic function around
/// ξ = 0 in the real coordinates (w, z):
///
///   f(w, z) ≈ Σ_{a+b ≤ 6} c[a][b] wᵃ zᵇ.
///
/// Products are truncated to total order 6, which keeps every derivative of
/// order ≤ 6 of a product exact.
class OriginSeries {
 public:
  using value_type = std::complex<double>;

  OriginSeries() = default;

  static OriginSeries constant(value_type c);

  /// F(w² + z²) from the power-series coefficients F(u) = Σ f_k u^k.
  /// Coefficients beyond u³ are ignored.
  static OriginSeries radial(std::span<const value_type> u_coeffs);

  /// g(w)·h(z) from the univariate Taylor coefficients of g and h.
  static OriginSeries separable(std::span<const value_type> w_coeffs, std::span<const value_type> z_coeffs);

  /// exp(α·(w² + z²)).
  static OriginSeries radial_gaussian(double alpha);

  value_type coeff(int a, int b) const noexcept;
  void set_coeff(int a, int b, value_type v) noexcept;

  /// ∂ᵃ_w ∂ᵇ_z f at the origin. Requires a + b ≤ kSeriesOrder.
  value_type derivative(int nw, int nz) const;

  /// f(g·ξ) for real g.
  OriginSeries argument_scaled(double g) const;

  OriginSeries operator*(const OriginSeries& rhs) const;
  OriginSeries operator+(const OriginSeries& rhs) const;
  OriginSeries operator*(value_type s) const;

 private:
  static constexpr int kDim = kSeriesOrder + 1;
  static constexpr int index(int a, int b) noexcept { return a * kDim + b; }

  std::array<value_type, kDim * kDim> c_{};
};

/// Taylor coefficients of exp(α u) through u^order.
std::array<std::complex<double>, kSeriesOrder + 1> exp_coefficients(std::complex<double> alpha);

/// Univariate Taylor coefficients of exp(c·t − A·t²/2) through t^6.
std::array<std::complex<double>, kSeriesOrder + 1> shifted_gaussian_coefficients(std::complex<double> c, double A);

double factorial(int n) noexcept;

}  // namespace cvtele
