#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>

#include "cvtele/channel.hpp"
#include "cvtele/numerics.hpp"
#include "cvtele/phasespace.hpp"
#include "cvtele/states.hpp"

namespace cvtele {

/// Where origin derivatives come from. `automatic` uses the closed-form
/// series when the function carries one and finite differences otherwise.
enum class DerivativeSource { automatic, closed_form, finite_difference };

struct MomentOptions {
  DerivativeSource source = DerivativeSource::automatic;
  DiffConfig diff;
};

/// ∂^{nw}_w ∂^{nz}_z f at the origin from the requested source.
std::complex<double> origin_derivative(const CharFn& f, int nw, int nz, const MomentOptions& opt = {});

/// Largest imaginary residue tolerated in a real moment. The finite-difference
/// bound is relative to max(1, |value|).
double imaginary_tolerance(const CharFn& f, const MomentOptions& opt);

/// i^{−(n+m)} ∂ⁿ_z ∂ᵐ_w f at the origin, before taking the real part.
std::complex<double> xp_derivative_moment(const CharFn& f, int n, int m, const MomentOptions& opt = {});

/// ⟨x̂ⁿ p̂ᵐ⟩ (symmetrized) of a Wigner-ordered function. n + m ≤ 4.
double raw_moment_xp(const CharFn& f, int n, int m, const MomentOptions& opt = {});

/// (−1)ᵐ ∂ⁿ_ξ ∂ᵐ_ξ* f at the origin, with no ordering conversion.
std::complex<double> wirtinger_moment(const CharFn& f, int n, int m, const MomentOptions& opt = {});

/// ⟨â†ⁿ âᵐ⟩ in ordering `s` (normal by default). n + m ≤ 4.
std::complex<double> raw_moment_normal(const CharFn& f, int n, int m, Ordering s = Ordering::normal,
                                       const MomentOptions& opt = {});

/// Moments indexed by (n, m): either ⟨x̂ⁿp̂ᵐ⟩ derivative moments or
/// normal-ordered ⟨â†ⁿâᵐ⟩.
struct MomentTable {
  std::map<std::pair<int, int>, std::complex<double>> entries;

  std::complex<double> at(int n, int m) const;
};

MomentTable xp_table(const CharFn& f, int order, const MomentOptions& opt = {});
MomentTable normal_table(const CharFn& f, int order, const MomentOptions& opt = {});

/// Σ_{i,j} C(n,i) C(m,j) g^{i+j} in(i,j) tr(n−i, m−j).
std::complex<double> output_moment_binomial(const MomentTable& input_moms, const MomentTable& transfer_moms, int n,
                                            int m, double g);

/// The factor that multiplies χ_in^{(1)}(g ξ) in the normal-ordered output:
/// τ(ξ) e^{(1−g²)|ξ|²/2}.
CharFn transfer_normal_factor(const Channel& ch);

struct MomentSet {
  double x_mean = 0.0;
  double p_mean = 0.0;
  double x2_central = 0.0;
  double p2_central = 0.0;
  double cov_xp = 0.0;
  double mu3_x = 0.0;
  double mu3_p = 0.0;
  double mu4_x = 0.0;
  double mu4_p = 0.0;
  double kappa4_x = 0.0;
  double kappa4_p = 0.0;
  double n_mean = 0.0;
  /// Absent when n_mean < 1e−12.
  std::optional<double> g2_zero;
  /// Set for transfer-function "averages", which need not describe a state.
  bool non_state = false;
};

/// All moments of a Wigner-ordered state characteristic function.
MomentSet moment_set(const CharFn& f, const MomentOptions& opt = {});

/// Moments of the transfer function τ, flagged non_state. The photon-number
/// entry uses the gain-aware normal factor.
MomentSet transfer_moment_set(const Channel& ch, const MomentOptions& opt = {});

struct ResourceClosedForms {
  double x2_AB = 0.0;
  /// Printed photon-number form.
  double n_AB = 0.0;
  /// Photon-number "average" obtained by differentiating τ e^{|ξ|²/2}.
  double n_AB_derivative = 0.0;
  double kappa4_AB = 0.0;
};

ResourceClosedForms resource_closed_forms(const SqueezedBellResource& res);

struct CovarianceDistortion {
  double x2_in = 0.0;
  double x2_out = 0.0;
  double p2_in = 0.0;
  double p2_out = 0.0;
  double cov_in = 0.0;
  double cov_out = 0.0;
  /// out − g²·in.
  double d_x2 = 0.0;
  double d_p2 = 0.0;
  double d_cov = 0.0;
  /// ⟨Δx̂²⟩ of the transfer function.
  double x2_AB = 0.0;
};

/// Throws ConsistencyError if d_x2 differs from x2_AB by more than 1e−6,
/// i.e. if the distortion is not input independent.
CovarianceDistortion distortion_covariance(const InputState& input, const Channel& ch, const MomentOptions& opt = {});

double squeezing_ratio(const CharFn& f, const MomentOptions& opt = {});

struct SqueezingTransmission {
  double s_in = 0.0;
  double s_out = 0.0;
  double quotient = 0.0;  // s_out / s_in
};

SqueezingTransmission squeezing_transmission(const InputState& input, const Channel& ch,
                                             const MomentOptions& opt = {});

}  // namespace cvtele
