#include "cvtele/states.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "cvtele/errors.hpp"

namespace cvtele {
namespace {

bool finite(double x) { return std::isfinite(x); }

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Taylor coefficients of e^{−u/2} L_n(u) in u, through u³.
std::array<std::complex<double>, kSeriesOrder + 1> fock_u_coefficients(int n) {
  std::array<std::complex<double>, kSeriesOrder + 1> lag{};
  double binom = 1.0;  // C(n, k)
  for (int k = 0; k <= kSeriesOrder / 2 && k <= n; ++k) {
    lag[k] = binom * ((k % 2) ? -1.0 : 1.0) / factorial(k);
    binom = binom * (n - k) / (k + 1);
  }
  const auto env = exp_coefficients(-0.5);
  std::array<std::complex<double>, kSeriesOrder + 1> out{};
  for (int i = 0; i <= kSeriesOrder / 2; ++i) {
    for (int j = 0; i + j <= kSeriesOrder / 2; ++j) out[i + j] += lag[i] * env[j];
  }
  return out;
}

CharFn coherent_charfn(std::complex<double> beta) {
  const double br = beta.real();
  const double bi = beta.imag();
  auto eval = [br, bi](PhasePoint p) {
    return std::exp(std::complex<double>(-0.5 * p.norm2(), 2.0 * (p.z * br - p.w * bi)));
  };
  const auto w = shifted_gaussian_coefficients({0.0, -2.0 * bi}, 1.0);
  const auto z = shifted_gaussian_coefficients({0.0, 2.0 * br}, 1.0);
  return CharFn(eval, Ordering::symmetric, "coherent(" + fmt(br) + "," + fmt(bi) + ")", OriginSeries::separable(w, z));
}

CharFn squeezed_charfn(double s) {
  const double aw = std::exp(2.0 * s);
  const double az = std::exp(-2.0 * s);
  auto eval = [aw, az](PhasePoint p) {
    return std::complex<double>(std::exp(-0.5 * (aw * p.w * p.w + az * p.z * p.z)), 0.0);
  };
  const auto w = shifted_gaussian_coefficients(0.0, aw);
  const auto z = shifted_gaussian_coefficients(0.0, az);
  return CharFn(eval, Ordering::symmetric, "sqvac(" + fmt(s) + ")", OriginSeries::separable(w, z));
}

CharFn mixture_charfn(const FockMixtureInput& mix) {
  int nmax = 0;
  for (const auto& w : mix.weights) nmax = std::max(nmax, w.n);
  if (nmax > kDefaultMaxFock) {
    throw CapacityError("Fock mixture component n = " + std::to_string(nmax) + " exceeds N_max = " +
                        std::to_string(kDefaultMaxFock));
  }
  std::vector<double> probs(nmax + 1, 0.0);
  OriginSeries series;
  for (const auto& w : mix.weights) {
    probs[w.n] += w.p;
    series = series + OriginSeries::radial(fock_u_coefficients(w.n)) * w.p;
  }
  auto eval = [probs](PhasePoint p) {
    thread_local std::vector<double> values;
    values.resize(probs.size());
    fock_charfn_values(p.norm2(), values);
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) acc += probs[k] * values[k];
    return std::complex<double>(acc, 0.0);
  };
  return CharFn(eval, Ordering::symmetric, label(InputState{mix}), series);
}

}  // namespace

FockInput::FockInput(int photons) : n(photons) {
  if (n < 0) throw InvalidArgument("Fock photon number must be nonnegative");
}

CoherentInput::CoherentInput(std::complex<double> displacement) : beta(displacement) {
  if (!finite(beta.real()) || !finite(beta.imag())) throw InvalidArgument("coherent displacement must be finite");
}

SqueezedVacuumInput::SqueezedVacuumInput(double squeezing) : s(squeezing) {
  if (!finite(s)) throw InvalidArgument("squeezing parameter must be finite");
}

FockMixtureInput::FockMixtureInput(std::vector<FockWeight> w) : weights(std::move(w)) {
  if (weights.empty()) throw InvalidArgument("Fock mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : weights) {
    if (c.n < 0) throw InvalidArgument("Fock mixture photon numbers must be nonnegative");
    if (!(c.p >= 0.0) || !finite(c.p)) throw InvalidArgument("Fock mixture weights must be nonnegative");
    total += c.p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("Fock mixture weights must sum to 1 (got " + fmt(total) + ")");
}

SqueezedBellResource::SqueezedBellResource(double d, double th, double rr) : delta(d), theta(th), r(rr) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidArgument("resource Delta must lie in [0, 1]");
  if (!finite(theta)) throw InvalidArgument("resource theta must be finite");
  if (!(r >= 0.0) || !finite(r)) throw InvalidArgument("resource squeezing r must be finite and >= 0");
}

Channel::Channel(SqueezedBellResource res, double g) : resource(res), gain(g) {
  if (!(gain > 0.0) || !finite(gain)) throw InvalidArgument("channel gain must be positive");
}

void fock_charfn_values(double u, std::span<double> out) {
  if (out.empty()) return;
  const double env = std::exp(-0.5 * u);
  out[0] = env;
  if (out.size() == 1) return;
  out[1] = env * (1.0 - u);
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = ((2.0 * kk + 1.0 - u) * out[k] - kk * out[k - 1]) / (kk + 1.0);
  }
}

CharFn fock_charfn(int n, int n_max) {
  if (n < 0) throw InvalidArgument("Fock photon number must be nonnegative");
  if (n > n_max) {
    throw CapacityError("Fock photon number " + std::to_string(n) + " exceeds N_max = " + std::to_string(n_max));
  }
  auto eval = [n](PhasePoint p) {
    thread_local std::vector<double> values;
    values.resize(static_cast<std::size_t>(n) + 1);
    fock_charfn_values(p.norm2(), values);
    return std::complex<double>(values[n], 0.0);
  };
  return CharFn(eval, Ordering::symmetric, "fock(" + std::to_string(n) + ")", OriginSeries::radial(fock_u_coefficients(n)));
}

CharFn input_charfn(const InputState& state) {
  return std::visit(
      [](const auto& s) -> CharFn {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockInput>) {
          return fock_charfn(s.n);
        } else if constexpr (std::is_same_v<T, CoherentInput>) {
          return coherent_charfn(s.beta);
        } else if constexpr (std::is_same_v<T, SqueezedVacuumInput>) {
          return squeezed_charfn(s.s);
        } else {
          return mixture_charfn(s);
        }
      },
      state);
}

std::vector<double> input_photon_probs(const InputState& state, int N) {
  if (N < 0) throw InvalidArgument("photon-number cutoff N must be nonnegative");
  std::vector<double> p(static_cast<std::size_t>(N) + 1, 0.0);
  std::visit(
      [&p, N](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockInput>) {
          if (s.n <= N) p[s.n] = 1.0;
        } else if constexpr (std::is_same_v<T, CoherentInput>) {
          const double mean = std::norm(s.beta);
          p[0] = std::exp(-mean);
          for (int k = 1; k <= N; ++k) p[k] = p[k - 1] * mean / k;
        } else if constexpr (std::is_same_v<T, SqueezedVacuumInput>) {
          // P_{2k} = (2k)!/(2^k k!)² tanh^{2k}(s)/cosh(s), odd terms vanish.
          const double t2 = std::tanh(s.s) * std::tanh(s.s);
          double even = 1.0 / std::cosh(s.s);
          for (int k = 0; 2 * k <= N; ++k) {
            p[2 * k] = even;
            even *= t2 * (2.0 * k + 1.0) / (2.0 * k + 2.0);
          }
        } else {
          for (const auto& w : s.weights) {
            if (w.n <= N) p[w.n] += w.p;
          }
        }
      },
      state);
  return p;
}

std::complex<double> squeezed_bell_charfn(const SqueezedBellResource& res, std::complex<double> xi_a,
                                          std::complex<double> xi_b) {
  const double ch = std::cosh(res.r);
  const double sh = std::sinh(res.r);
  const std::complex<double> pa = ch * xi_a - sh * std::conj(xi_b);
  const std::complex<double> pb = ch * xi_b - sh * std::conj(xi_a);
  const double na = std::norm(pa);
  const double nb = std::norm(pb);
  const double d = res.delta;
  const double cross = std::real(std::polar(1.0, res.theta) * pa * pb);
  const double brace = d * d + 2.0 * d * std::sqrt(1.0 - d * d) * cross + (1.0 - d * d) * (1.0 - na) * (1.0 - nb);
  return {std::exp(-0.5 * (na + nb)) * brace, 0.0};
}

TransferShape transfer_shape(const Channel& ch) {
  const double r = ch.resource.r;
  const double er = std::exp(-r);
  // g cosh r − sinh r and cosh r − g sinh r, rearranged so that g = 1 is exact.
  return {(ch.gain - 1.0) * std::cosh(r) + er, er - (ch.gain - 1.0) * std::sinh(r)};
}

namespace {

struct TransferCoefficients {
  double alpha;  // envelope exp(−alpha u)
  double p0, p1, p2;  // brace polynomial in u
};

TransferCoefficients transfer_coefficients(const Channel& ch) {
  const auto [a, b] = transfer_shape(ch);
  const double a2 = a * a;
  const double b2 = b * b;
  const double d = ch.resource.delta;
  const double one_m = 1.0 - d * d;
  const double lin = 2.0 * d * std::sqrt(one_m) * a * b * std::cos(ch.resource.theta);
  return {0.5 * (a2 + b2), d * d + one_m, lin - one_m * (a2 + b2), one_m * a2 * b2};
}

}  // namespace

double transfer_value(const Channel& ch, double u) {
  const auto c = transfer_coefficients(ch);
  return std::exp(-c.alpha * u) * (c.p0 + u * (c.p1 + u * c.p2));
}

CharFn transfer_fn(const Channel& ch) {
  const auto c = transfer_coefficients(ch);
  auto eval = [c](PhasePoint p) {
    const double u = p.norm2();
    return std::complex<double>(std::exp(-c.alpha * u) * (c.p0 + u * (c.p1 + u * c.p2)), 0.0);
  };
  const auto env = exp_coefficients(-c.alpha);
  const std::array<double, 3> poly{c.p0, c.p1, c.p2};
  std::array<std::complex<double>, kSeriesOrder + 1> u_coeffs{};
  for (int i = 0; i <= kSeriesOrder / 2; ++i) {
    for (int j = 0; j < 3 && i + j <= kSeriesOrder / 2; ++j) u_coeffs[i + j] += env[i] * poly[j];
  }
  std::ostringstream name;
  name << "transfer(delta=" << fmt(ch.resource.delta) << ",theta=" << fmt(ch.resource.theta)
       << ",r=" << fmt(ch.resource.r) << ",g=" << fmt(ch.gain) << ")";
  return CharFn(eval, Ordering::symmetric, name.str(), OriginSeries::radial(u_coeffs));
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

InputState parse_state_descriptor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument("state descriptor '" + std::string(text) + "' lacks ':'");
  const auto kind = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (kind == "fock") return FockInput(parse_int(args, "Fock photon number"));
  if (kind == "coherent") {
    const auto parts = split(args, ',');
    if (parts.size() > 2) throw InvalidArgument("coherent descriptor takes RE[,IM]");
    const double re = parse_double(parts[0], "coherent real part");
    const double im = parts.size() == 2 ? parse_double(parts[1], "coherent imaginary part") : 0.0;
    return CoherentInput({re, im});
  }
  if (kind == "sqvac") return SqueezedVacuumInput(parse_double(args, "squeezing"));
  if (kind == "mix") {
    std::vector<FockWeight> weights;
    for (auto item : split(args, ',')) {
      const auto at = item.find('@');
      if (at == std::string_view::npos) throw InvalidArgument("mixture component '" + std::string(item) + "' must be N@P");
      weights.push_back({parse_int(item.substr(0, at), "mixture photon number"),
                         parse_double(item.substr(at + 1), "mixture weight")});
    }
    return FockMixtureInput(std::move(weights));
  }
  throw InvalidArgument("unknown state kind '" + std::string(kind) + "'");
}

std::string to_descriptor(const InputState& state) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockInput>) {
          return "fock:" + std::to_string(s.n);
        } else if constexpr (std::is_same_v<T, CoherentInput>) {
          std::string d = "coherent:" + fmt(s.beta.real());
          if (s.beta.imag() != 0.0) d += "," + fmt(s.beta.imag());
          return d;
        } else if constexpr (std::is_same_v<T, SqueezedVacuumInput>) {
          return "sqvac:" + fmt(s.s);
        } else {
          std::string d = "mix:";
          for (std::size_t i = 0; i < s.weights.size(); ++i) {
            if (i) d += ",";
            d += std::to_string(s.weights[i].n) + "@" + fmt(s.weights[i].p);
          }
          return d;
        }
      },
      state);
}

std::string label(const InputState& state) { return to_descriptor(state); }

bool is_fock_mixture(const InputState& state) noexcept {
  return std::holds_alternative<FockInput>(state) || std::holds_alternative<FockMixtureInput>(state);
}

}  // namespace cvtele
