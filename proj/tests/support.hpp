#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cvtele/states.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline cvtele::PhasePoint random_point(double radius) {
  const double rho = radius * std::sqrt(uniform(0.0, 1.0));
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  return {rho * std::cos(phi), rho * std::sin(phi)};
}

inline cvtele::SqueezedBellResource random_resource() {
  return {uniform(0.0, 1.0), uniform(-std::numbers::pi, std::numbers::pi), uniform(0.1, 2.5)};
}

/// The five inputs of the case studies.
inline std::vector<cvtele::InputState> catalog() {
  return {cvtele::FockInput(0), cvtele::FockInput(1), cvtele::FockMixtureInput({{0, 0.5}, {1, 0.5}}),
          cvtele::CoherentInput({2.12928, 0.0}), cvtele::SqueezedVacuumInput(1.5)};
}

/// Catalog plus a few shapes the case studies do not cover.
inline std::vector<cvtele::InputState> extended_catalog() {
  auto c = catalog();
  c.push_back(cvtele::FockInput(5));
  c.push_back(cvtele::CoherentInput({0.7, -0.4}));
  c.push_back(cvtele::SqueezedVacuumInput(-0.6));
  c.push_back(cvtele::FockMixtureInput({{0, 0.2}, {2, 0.3}, {3, 0.5}}));
  return c;
}

/// Σ_k C(n,k) (−u)^k / k!, summed term by term.
inline double laguerre_bruteforce(int n, double u) {
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    double binom = 1.0;
    for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
    double term = binom;
    for (int i = 1; i <= k; ++i) term *= -u / i;
    acc += term;
  }
  return acc;
}

/// Σ_k C(n,k) u^k / k!, the magnitude scale of the sum above.
inline double laguerre_abs_terms(int n, double u) { return testing::laguerre_bruteforce(n, -u); }

}  // namespace testing
