#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvtele/moments.hpp"
#include "cvtele/numerics.hpp"
#include "cvtele/photonstats.hpp"
#include "cvtele/states.hpp"

namespace cvtele {

enum class ObjectiveKind {
  x2_transfer,
  kappa4_transfer,
  n_transfer,
  mu4_x,
  mu4_p,
  d_functional,
  one_minus_fidelity,
  frobenius,
};

std::string_view to_string(ObjectiveKind kind) noexcept;
ObjectiveKind objective_kind_from_string(std::string_view name);
bool needs_input(ObjectiveKind kind) noexcept;

/// A function of Δ at fixed (θ, r, g). For the transfer kinds `source`
/// selects the printed closed form (closed_form), the series derivative
/// (automatic) or finite differences.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::x2_transfer;
  std::optional<InputState> input;
  double theta = 0.0;
  double r = 1.0;
  double g = 1.0;
  int N = kDefaultPhotonCutoff;
  QuadratureConfig quadrature;
  MomentOptions moments;
  DerivativeSource source = DerivativeSource::closed_form;

  void validate() const;
  double operator()(double delta) const;
};

struct OptimumRecord {
  double delta_star = 0.0;
  double objective_value = 0.0;
  double r = 0.0;
  ObjectiveKind kind = ObjectiveKind::x2_transfer;
  double bracket_lo = 0.0;
  double bracket_hi = 1.0;
  int iterations = 0;
  /// Set when a sweep cell failed; the numeric fields are then meaningless.
  std::optional<std::string> error;
};

inline constexpr int kCoarseGridPoints = 41;
inline constexpr double kDeltaTolerance = 1e-6;

/// Coarse grid on [0, 1] to pick a basin, then golden-section search.
OptimumRecord minimize_delta(const Objective& obj);

/// Same search on an arbitrary function of Δ ∈ [0, 1].
OptimumRecord minimize_on_unit_interval(const std::function<double(double)>& f);

enum class ClosedFormDelta {
  fock1_fidelity,
  coherent_fidelity,
  coherent_mu4_x,
  squeezed_mu4_x,
  fock1_mu4_x,
  squeezed_mu4_p,
};

std::string_view to_string(ClosedFormDelta kind) noexcept;
bool needs_squeezing(ClosedFormDelta kind) noexcept;

double closed_form_delta(ClosedFormDelta kind, double r, std::optional<double> s = std::nullopt);

/// One record per (kind, r) in kinds-major, r-minor order. Cells run on up
/// to `jobs` threads; a failing cell is recorded and the sweep continues.
std::vector<OptimumRecord> sweep_r(const std::vector<ObjectiveKind>& kinds, const std::vector<double>& r_grid,
                                   const Objective& base, int jobs = 1);

}  // namespace cvtele
