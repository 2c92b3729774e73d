#include "cvtele/photonstats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {
namespace {

void check_cutoff(int N) {
  if (N < 0) throw InvalidArgument("photon-number cutoff must be nonnegative");
  if (N > kDefaultMaxFock) {
    throw CapacityError("photon-number cutoff " + std::to_string(N) + " exceeds N_max = " +
                        std::to_string(kDefaultMaxFock));
  }
}

}  // namespace

PhotonDistribution PhotonDistribution::from_probs(std::vector<double> p) {
  PhotonDistribution d;
  d.N = static_cast<int>(p.size()) - 1;
  d.clamped.resize(p.size());
  std::transform(p.begin(), p.end(), d.clamped.begin(), [](double x) { return std::clamp(x, 0.0, 1.0); });
  d.truncation_mass_bound = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
  d.probs = std::move(p);
  return d;
}

double PhotonDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) m += static_cast<double>(n) * probs[n];
  return m;
}

PhotonDistribution input_distribution(const InputState& state, int N) {
  return PhotonDistribution::from_probs(input_photon_probs(state, N));
}

PhotonDistribution output_photon_probs(const OutputState& out, int N, const QuadratureConfig& cfg) {
  check_cutoff(N);
  const CharFn chi = out.charfn;
  const std::size_t count = static_cast<std::size_t>(N) + 1;
  auto integrand = [chi, count](PhasePoint p, std::span<std::complex<double>> v) {
    thread_local std::vector<double> fock;
    fock.resize(count);
    fock_charfn_values(p.norm2(), fock);
    const auto c = chi(p);
    for (std::size_t n = 0; n < count; ++n) v[n] = c * fock[n];
  };
  const auto res = integrate_plane(PlaneBatchFn(integrand), count, cfg);
  std::vector<double> p(count);
  for (std::size_t n = 0; n < count; ++n) p[n] = res.values[n].real() / std::numbers::pi;
  return PhotonDistribution::from_probs(std::move(p));
}

double d_functional(std::span<const double> p_in, std::span<const double> p_out) {
  if (p_in.size() != p_out.size()) throw InvalidArgument("D_N needs distributions of equal length");
  double acc = 0.0;
  for (std::size_t n = 0; n < p_in.size(); ++n) {
    const double d = p_out[n] - p_in[n];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double d_functional(const PhotonDistribution& p_in, const PhotonDistribution& p_out) {
  return d_functional(p_in.clamped, p_out.clamped);
}

double d_increment_estimate(double d_n, double delta_next) {
  if (!(d_n >= 0.0) || !(delta_next >= 0.0)) throw InvalidArgument("D_N and its increment must be nonnegative");
  if (d_n == 0.0) return std::sqrt(delta_next);
  return d_n + delta_next / (2.0 * d_n);
}

double overlap(const CharFn& f, const CharFn& g, const QuadratureConfig& cfg) {
  if (f.ordering() != Ordering::symmetric || g.ordering() != Ordering::symmetric) {
    throw InvalidArgument("overlap needs Wigner-ordered characteristic functions");
  }
  const auto v = integrate_plane([&f, &g](PhasePoint p) { return f(p) * g(-p); }, cfg);
  return v.real() / std::numbers::pi;
}

DistortionMeasures distortion_measures(const InputState& input, const OutputState& out, int N,
                                       const QuadratureConfig& cfg) {
  check_cutoff(N + 1);
  const CharFn chi_in = input_charfn(input);
  const CharFn chi_out = out.charfn;
  const std::size_t nprob = static_cast<std::size_t>(N) + 2;
  // Components: P_0..P_{N+1}, Tr(ρ_in ρ_out), Tr(ρ_out²).
  auto integrand = [chi_in, chi_out, nprob](PhasePoint p, std::span<std::complex<double>> v) {
    thread_local std::vector<double> fock;
    fock.resize(nprob);
    fock_charfn_values(p.norm2(), fock);
    const auto c = chi_out(p);
    const auto cm = chi_out(-p);
    for (std::size_t n = 0; n < nprob; ++n) v[n] = c * fock[n];
    v[nprob] = chi_in(p) * cm;
    v[nprob + 1] = c * cm;
  };
  const auto res = integrate_plane(PlaneBatchFn(integrand), nprob + 2, cfg);
  std::vector<double> p(nprob);
  for (std::size_t n = 0; n < nprob; ++n) p[n] = res.values[n].real() / std::numbers::pi;
  const auto pout = PhotonDistribution::from_probs(std::move(p));
  const auto pin = input_distribution(input, N + 1);

  DistortionMeasures m;
  m.fidelity = res.values[nprob].real() / std::numbers::pi;
  m.purity_out = res.values[nprob + 1].real() / std::numbers::pi;
  m.purity_in = overlap(chi_in, chi_in, cfg);
  m.frobenius = std::sqrt(std::max(0.0, m.purity_in + m.purity_out - 2.0 * m.fidelity));
  const std::span<const double> in_all(pin.clamped);
  const std::span<const double> out_all(pout.clamped);
  m.d_n = d_functional(in_all.first(N + 1), out_all.first(N + 1));
  m.d_n_next = d_functional(in_all, out_all);

  if (is_fock_mixture(input) && std::abs(m.d_n - m.frobenius) > 1e-6) {
    throw ConsistencyError("D_N = " + std::to_string(m.d_n) + " differs from the Frobenius distance " +
                           std::to_string(m.frobenius) + " for a Fock-diagonal input");
  }
  return m;
}

}  // namespace cvtele
