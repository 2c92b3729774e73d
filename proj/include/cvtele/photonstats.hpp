#pragma once

#include <span>
#include <vector>

#include "cvtele/channel.hpp"
#include "cvtele/numerics.hpp"
#include "cvtele/states.hpp"

namespace cvtele {

inline constexpr int kDefaultPhotonCutoff = 24;
inline constexpr double kQuadratureSlack = 1e-8;

/// P_0..P_N. `probs` is raw quadrature output; `clamped` is the same list
/// clipped to [0, 1].
struct PhotonDistribution {
  std::vector<double> probs;
  std::vector<double> clamped;
  int N = 0;
  /// 1 − Σ P_n.
  double truncation_mass_bound = 0.0;

  static PhotonDistribution from_probs(std::vector<double> p);
  double mean() const;
};

struct DistortionMeasures {
  double d_n = 0.0;
  /// D_{N+1}; the increment over d_n tracks convergence in N.
  double d_n_next = 0.0;
  double fidelity = 0.0;
  double frobenius = 0.0;
  double purity_in = 0.0;
  double purity_out = 0.0;
};

/// Exact input statistics wrapped as a distribution.
PhotonDistribution input_distribution(const InputState& state, int N);

/// P_n = (1/π) ∫ χ_out(ξ) χ_n(−ξ) d²ξ for n = 0..N.
PhotonDistribution output_photon_probs(const OutputState& out, int N, const QuadratureConfig& cfg = {});

/// (Σ_n (P_n^out − P_n^in)²)^{1/2}.
double d_functional(std::span<const double> p_in, std::span<const double> p_out);
double d_functional(const PhotonDistribution& p_in, const PhotonDistribution& p_out);

/// D_N + δ_N / (2 D_N); √δ_N when D_N = 0.
double d_increment_estimate(double d_n, double delta_next);

/// Tr(ρ_f ρ_g) = (1/π) ∫ f(ξ) g(−ξ) d²ξ.
double overlap(const CharFn& f, const CharFn& g, const QuadratureConfig& cfg = {});

/// Fidelity, purities, Frobenius distance and D_N in one pass over the plane.
/// For Fock-diagonal inputs the output is Fock diagonal too, so D_N must
/// equal the Frobenius distance; a mismatch above 1e−6 raises ConsistencyError.
DistortionMeasures distortion_measures(const InputState& input, const OutputState& out, int N = kDefaultPhotonCutoff,
                                       const QuadratureConfig& cfg = {});

}  // namespace cvtele
