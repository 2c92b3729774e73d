#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cvtele/phasespace.hpp"

namespace cvtele {

inline constexpr int kDefaultMaxFock = 64;

/// Fock state |n⟩.
struct FockInput {
  int n = 0;
  explicit FockInput(int photons);
};

/// Coherent state |β⟩; χ(ξ) = exp(−|ξ|²/2 + ξβ* − ξ*β).
struct CoherentInput {
  std::complex<double> beta;
  explicit CoherentInput(std::complex<double> displacement);
};

/// Squeezed vacuum; χ(ξ) = exp(−|ξ cosh s + ξ* sinh s|²/2).
struct SqueezedVacuumInput {
  double s = 0.0;
  explicit SqueezedVacuumInput(double squeezing);
};

struct FockWeight {
  int n = 0;
  double p = 0.0;
};

/// Σ p_k |n_k⟩⟨n_k|. Weights must be nonnegative and sum to 1 within 1e−12.
struct FockMixtureInput {
  std::vector<FockWeight> weights;
  explicit FockMixtureInput(std::vector<FockWeight> w);
};

using InputState = std::variant<FockInput, CoherentInput, SqueezedVacuumInput, FockMixtureInput>;

/// Squeezed Bell-like two-mode resource. Δ ∈ [0, 1], r ≥ 0.
struct SqueezedBellResource {
  double delta = 1.0;
  double theta = 0.0;
  double r = 0.0;

  SqueezedBellResource(double delta, double theta, double r);
};

struct Channel {
  SqueezedBellResource resource;
  double gain = 1.0;

  explicit Channel(SqueezedBellResource res, double g = 1.0);
};

/// e^{−u/2} L_k(u) for k = 0..out.size()−1, by the three-term Laguerre
/// recurrence carried on the scaled values.
void fock_charfn_values(double u, std::span<double> out);

/// Wigner characteristic function of |n⟩: e^{−|ξ|²/2} L_n(|ξ|²).
CharFn fock_charfn(int n, int n_max = kDefaultMaxFock);

CharFn input_charfn(const InputState& state);

/// Closed-form P_0..P_N.
std::vector<double> input_photon_probs(const InputState& state, int N);

/// Full two-mode χ_sbl(ξ_A; ξ_B).
std::complex<double> squeezed_bell_charfn(const SqueezedBellResource& res, std::complex<double> xi_a,
                                          std::complex<double> xi_b);

/// Radial coefficients of the transfer function τ(ξ) = χ_sbl(g ξ*; ξ):
/// ξ'_A = a ξ*, ξ'_B = b ξ with a = g cosh r − sinh r, b = cosh r − g sinh r.
struct TransferShape {
  double a = 1.0;
  double b = 1.0;
};
TransferShape transfer_shape(const Channel& ch);

/// τ as a function of u = |ξ|².
double transfer_value(const Channel& ch, double u);

/// One-mode transfer function τ(ξ), Wigner ordered.
CharFn transfer_fn(const Channel& ch);

/// `fock:N`, `coherent:RE[,IM]`, `sqvac:S`, `mix:N1@P1,N2@P2,...`.
InputState parse_state_descriptor(std::string_view text);
std::string to_descriptor(const InputState& state);
std::string label(const InputState& state);

bool is_fock_mixture(const InputState& state) noexcept;

}  // namespace cvtele
