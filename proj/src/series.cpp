#include "cvtele/series.hpp"

#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {

double factorial(int n) noexcept {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

OriginSeries OriginSeries::constant(value_type c) {
  OriginSeries s;
  s.c_[index(0, 0)] = c;
  return s;
}

OriginSeries OriginSeries::radial(std::span<const value_type> u_coeffs) {
  // (w² + z²)^k = Σ_j C(k, j) w^{2j} z^{2(k−j)}
  OriginSeries s;
  const int kmax = kSeriesOrder / 2;
  for (int k = 0; k <= kmax && k < static_cast<int>(u_coeffs.size()); ++k) {
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      s.c_[index(2 * j, 2 * (k - j))] += binom * u_coeffs[k];
      binom = binom * (k - j) / (j + 1);
    }
  }
  return s;
}

OriginSeries OriginSeries::separable(std::span<const value_type> w_coeffs, std::span<const value_type> z_coeffs) {
  OriginSeries s;
  for (int a = 0; a <= kSeriesOrder && a < static_cast<int>(w_coeffs.size()); ++a) {
    for (int b = 0; a + b <= kSeriesOrder && b < static_cast<int>(z_coeffs.size()); ++b) {
      s.c_[index(a, b)] = w_coeffs[a] * z_coeffs[b];
    }
  }
  return s;
}

OriginSeries OriginSeries::radial_gaussian(double alpha) {
  const auto coeffs = exp_coefficients(alpha);
  return radial(coeffs);
}

OriginSeries::value_type OriginSeries::coeff(int a, int b) const noexcept {
  if (a < 0 || b < 0 || a + b > kSeriesOrder) return {};
  return c_[index(a, b)];
}

void OriginSeries::set_coeff(int a, int b, value_type v) noexcept {
  if (a < 0 || b < 0 || a + b > kSeriesOrder) return;
  c_[index(a, b)] = v;
}

OriginSeries::value_type OriginSeries::derivative(int nw, int nz) const {
  if (nw < 0 || nz < 0) throw InvalidArgument("derivative orders must be nonnegative");
  if (nw + nz > kSeriesOrder) {
    throw CapacityError("derivative order " + std::to_string(nw + nz) + " exceeds series order " +
                        std::to_string(kSeriesOrder));
  }
  return c_[index(nw, nz)] * (factorial(nw) * factorial(nz));
}

OriginSeries OriginSeries::argument_scaled(double g) const {
  OriginSeries s;
  for (int a = 0; a <= kSeriesOrder; ++a) {
    for (int b = 0; a + b <= kSeriesOrder; ++b) {
      double gp = 1.0;
      for (int k = 0; k < a + b; ++k) gp *= g;
      s.c_[index(a, b)] = c_[index(a, b)] * gp;
    }
  }
  return s;
}

OriginSeries OriginSeries::operator*(const OriginSeries& rhs) const {
  OriginSeries s;
  for (int a1 = 0; a1 <= kSeriesOrder; ++a1) {
    for (int b1 = 0; a1 + b1 <= kSeriesOrder; ++b1) {
      const value_type lhs = c_[index(a1, b1)];
      if (lhs == value_type{}) continue;
      for (int a2 = 0; a1 + b1 + a2 <= kSeriesOrder; ++a2) {
        for (int b2 = 0; a1 + b1 + a2 + b2 <= kSeriesOrder; ++b2) {
          s.c_[index(a1 + a2, b1 + b2)] += lhs * rhs.c_[index(a2, b2)];
        }
      }
    }
  }
  return s;
}

OriginSeries OriginSeries::operator+(const OriginSeries& rhs) const {
  OriginSeries s;
  for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] + rhs.c_[i];
  return s;
}

OriginSeries OriginSeries::operator*(value_type k) const {
  OriginSeries s;
  for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] * k;
  return s;
}

std::array<std::complex<double>, kSeriesOrder + 1> exp_coefficients(std::complex<double> alpha) {
  std::array<std::complex<double>, kSeriesOrder + 1> out{};
  out[0] = 1.0;
  for (int k = 1; k <= kSeriesOrder; ++k) out[k] = out[k - 1] * alpha / static_cast<double>(k);
  return out;
}

std::array<std::complex<double>, kSeriesOrder + 1> shifted_gaussian_coefficients(std::complex<double> c, double A) {
  const auto lin = exp_coefficients(c);
  std::array<std::complex<double>, kSeriesOrder + 1> quad{};
  // exp(−A t²/2) = Σ_j (−A/2)^j t^{2j} / j!
  std::complex<double> term = 1.0;
  for (int j = 0; 2 * j <= kSeriesOrder; ++j) {
    quad[2 * j] = term;
    term *= (-A / 2.0) / static_cast<double>(j + 1);
  }
  std::array<std::complex<double>, kSeriesOrder + 1> out{};
  for (int i = 0; i <= kSeriesOrder; ++i) {
    for (int j = 0; i + j <= kSeriesOrder; ++j) out[i + j] += lin[i] * quad[j];
  }
  return out;
}

}  // namespace cvtele
