#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cvtele/phasespace.hpp"

namespace cvtele {

struct QuadratureConfig {
  int radial_nodes = 96;
  int angular_nodes = 128;
  /// Fixed integration radius; empty means probe the integrand.
  std::optional<double> cutoff_radius;
  double target_abs_tol = 1e-9;
  /// Node doublings allowed while chasing target_abs_tol.
  int max_refinements = 3;

  void validate() const;
};

struct DiffConfig {
  double step = 0.2;
  int richardson_levels = 3;

  void validate() const;
};

using PlaneFn = std::function<std::complex<double>(PhasePoint)>;
/// Several integrands evaluated together at one point.
using PlaneBatchFn = std::function<void(PhasePoint, std::span<std::complex<double>>)>;

struct QuadratureResult {
  std::vector<std::complex<double>> values;
  double error_estimate = 0.0;
  int radial_nodes = 0;
  int angular_nodes = 0;
};

/// ∫ f(w, z) dw dz over the plane.
std::complex<double> integrate_plane(const PlaneFn& f, const QuadratureConfig& cfg = {});

/// Batched form: every component shares one grid, the grid is sized for the
/// widest component, and convergence is judged on the worst component.
QuadratureResult integrate_plane(const PlaneBatchFn& f, std::size_t count, const QuadratureConfig& cfg = {});

/// ∂^{nw}_w ∂^{nz}_z f at the origin by central differences and Richardson
/// extrapolation. nw + nz ≤ 6.
std::complex<double> derivative_at_origin(const PlaneFn& f, int nw, int nz, const DiffConfig& cfg = {});

/// Gauss–Legendre rule on [0, 1]. Cached per node count.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

}  // namespace cvtele
