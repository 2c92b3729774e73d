#include "cvtele/moments.hpp"

#include <cmath>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {
namespace {

constexpr double kClosedFormImagTol = 1e-8;
constexpr double kFiniteDifferenceImagTol = 1e-6;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

std::complex<double> ipow(int k) {
  static constexpr std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

bool use_series(const CharFn& f, const MomentOptions& opt) {
  switch (opt.source) {
    case DerivativeSource::closed_form:
      if (!f.series()) throw InvalidArgument("no closed-form origin derivatives for " + f.label());
      return true;
    case DerivativeSource::finite_difference: return false;
    case DerivativeSource::automatic: break;
  }
  return f.series() != nullptr;
}

void check_order(int n, int m) {
  if (n < 0 || m < 0) throw InvalidArgument("moment orders must be nonnegative");
  if (n + m > 4) throw CapacityError("moments are available through total order 4");
}

}  // namespace

std::complex<double> origin_derivative(const CharFn& f, int nw, int nz, const MomentOptions& opt) {
  if (use_series(f, opt)) return f.series()->derivative(nw, nz);
  return derivative_at_origin([&f](PhasePoint p) { return f(p); }, nw, nz, opt.diff);
}

double imaginary_tolerance(const CharFn& f, const MomentOptions& opt) {
  return use_series(f, opt) ? kClosedFormImagTol : kFiniteDifferenceImagTol;
}

std::complex<double> xp_derivative_moment(const CharFn& f, int n, int m, const MomentOptions& opt) {
  check_order(n, m);
  return ipow(-(n + m)) * origin_derivative(f, m, n, opt);
}

double raw_moment_xp(const CharFn& f, int n, int m, const MomentOptions& opt) {
  if (f.ordering() != Ordering::symmetric) throw InvalidArgument("x/p moments need a Wigner-ordered function");
  const auto v = xp_derivative_moment(f, n, m, opt);
  const double tol = imaginary_tolerance(f, opt) * std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > tol) {
    throw ConsistencyError("moment <x^" + std::to_string(n) + " p^" + std::to_string(m) + "> of " + f.label() +
                           " has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

std::complex<double> wirtinger_moment(const CharFn& f, int n, int m, const MomentOptions& opt) {
  check_order(n, m);
  // ∂ⁿ_ξ ∂ᵐ_ξ* = 2^{−(n+m)} (∂_w − i∂_z)ⁿ (∂_w + i∂_z)ᵐ
  std::complex<double> acc{};
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= m; ++k) {
      const int nz = (n - j) + (m - k);
      const auto coef = binomial(n, j) * binomial(m, k) * ipow(-(n - j)) * ipow(m - k);
      acc += coef * origin_derivative(f, j + k, nz, opt);
    }
  }
  acc /= std::pow(2.0, n + m);
  return (m % 2 ? -1.0 : 1.0) * acc;
}

std::complex<double> raw_moment_normal(const CharFn& f, int n, int m, Ordering s, const MomentOptions& opt) {
  return wirtinger_moment(convert_ordering(f, to_int(s)), n, m, opt);
}

std::complex<double> MomentTable::at(int n, int m) const {
  const auto it = entries.find({n, m});
  if (it == entries.end()) {
    throw InvalidArgument("moment table lacks entry (" + std::to_string(n) + ", " + std::to_string(m) + ")");
  }
  return it->second;
}

MomentTable xp_table(const CharFn& f, int order, const MomentOptions& opt) {
  MomentTable t;
  for (int n = 0; n <= order; ++n) {
    for (int m = 0; n + m <= order; ++m) t.entries[{n, m}] = xp_derivative_moment(f, n, m, opt);
  }
  return t;
}

MomentTable normal_table(const CharFn& f, int order, const MomentOptions& opt) {
  MomentTable t;
  for (int n = 0; n <= order; ++n) {
    for (int m = 0; n + m <= order; ++m) t.entries[{n, m}] = wirtinger_moment(f, n, m, opt);
  }
  return t;
}

std::complex<double> output_moment_binomial(const MomentTable& input_moms, const MomentTable& transfer_moms, int n,
                                            int m, double g) {
  if (n < 0 || m < 0) throw InvalidArgument("moment orders must be nonnegative");
  std::complex<double> acc{};
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      acc += binomial(n, i) * binomial(m, j) * std::pow(g, i + j) * input_moms.at(i, j) *
             transfer_moms.at(n - i, m - j);
    }
  }
  return acc;
}

CharFn transfer_normal_factor(const Channel& ch) {
  const CharFn tau = transfer_fn(ch);
  const double half = 0.5 * (1.0 - ch.gain * ch.gain);
  if (half == 0.0) return CharFn([tau](PhasePoint p) { return tau(p); }, Ordering::normal, tau.label() + "|normal", *tau.series());
  return CharFn([tau, half](PhasePoint p) { return std::exp(half * p.norm2()) * tau(p); }, Ordering::normal,
                tau.label() + "|normal", OriginSeries::radial_gaussian(half) * (*tau.series()));
}

namespace {

struct XpMoments {
  double x, p, x2, p2, xp, x3, p3, x4, p4;
};

XpMoments xp_moments(const CharFn& f, const MomentOptions& opt) {
  return {raw_moment_xp(f, 1, 0, opt), raw_moment_xp(f, 0, 1, opt), raw_moment_xp(f, 2, 0, opt),
          raw_moment_xp(f, 0, 2, opt), raw_moment_xp(f, 1, 1, opt), raw_moment_xp(f, 3, 0, opt),
          raw_moment_xp(f, 0, 3, opt), raw_moment_xp(f, 4, 0, opt), raw_moment_xp(f, 0, 4, opt)};
}

void fill_central(MomentSet& ms, const XpMoments& r) {
  ms.x_mean = r.x;
  ms.p_mean = r.p;
  ms.x2_central = r.x2 - r.x * r.x;
  ms.p2_central = r.p2 - r.p * r.p;
  ms.cov_xp = r.xp - r.x * r.p;
  ms.mu3_x = r.x3 - 3.0 * r.x * r.x2 + 2.0 * r.x * r.x * r.x;
  ms.mu3_p = r.p3 - 3.0 * r.p * r.p2 + 2.0 * r.p * r.p * r.p;
  ms.mu4_x = r.x4 - 4.0 * r.x * r.x3 + 6.0 * r.x * r.x * r.x2 - 3.0 * std::pow(r.x, 4);
  ms.mu4_p = r.p4 - 4.0 * r.p * r.p3 + 6.0 * r.p * r.p * r.p2 - 3.0 * std::pow(r.p, 4);
  ms.kappa4_x = ms.mu4_x - 3.0 * ms.x2_central * ms.x2_central;
  ms.kappa4_p = ms.mu4_p - 3.0 * ms.p2_central * ms.p2_central;
}

double real_part_checked(std::complex<double> v, double tol, const std::string& what) {
  if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real()))) {
    throw ConsistencyError(what + " has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

}  // namespace

MomentSet moment_set(const CharFn& f, const MomentOptions& opt) {
  MomentSet ms;
  fill_central(ms, xp_moments(f, opt));
  const CharFn normal = convert_ordering(f, to_int(Ordering::normal));
  const double tol = imaginary_tolerance(normal, opt);
  ms.n_mean = real_part_checked(wirtinger_moment(normal, 1, 1, opt), tol, "<n> of " + f.label());
  if (ms.n_mean >= 1e-12) {
    const double a2a2 = real_part_checked(wirtinger_moment(normal, 2, 2, opt), tol, "<a+^2 a^2> of " + f.label());
    ms.g2_zero = a2a2 / (ms.n_mean * ms.n_mean);
  }
  return ms;
}

MomentSet transfer_moment_set(const Channel& ch, const MomentOptions& opt) {
  const CharFn tau = transfer_fn(ch);
  MomentSet ms;
  fill_central(ms, xp_moments(tau, opt));
  const CharFn normal = transfer_normal_factor(ch);
  ms.n_mean = real_part_checked(wirtinger_moment(normal, 1, 1, opt), imaginary_tolerance(normal, opt),
                                "<n> of " + tau.label());
  ms.non_state = true;
  return ms;
}

ResourceClosedForms resource_closed_forms(const SqueezedBellResource& res) {
  const double d = res.delta;
  const double mix = d * std::sqrt(1.0 - d * d);
  const double c = std::cos(res.theta);
  const double e2 = std::exp(-2.0 * res.r);
  ResourceClosedForms out;
  out.x2_AB = e2 * (6.0 - 4.0 * d * d - 4.0 * mix * c);
  out.n_AB = -e2 * (-3.0 + std::exp(2.0 * res.r) + 2.0 * d * d + 2.0 * mix * c);
  out.n_AB_derivative = -e2 * (-3.0 + 2.0 * d * d + 2.0 * mix * c);
  out.kappa4_AB = 24.0 * std::exp(-4.0 * res.r) * (-1.0 + d * d) * (1.0 - 4.0 * mix);
  return out;
}

CovarianceDistortion distortion_covariance(const InputState& input, const Channel& ch, const MomentOptions& opt) {
  const CharFn in = input_charfn(input);
  const MomentSet min = moment_set(in, opt);
  const MomentSet mout = moment_set(teleport_charfn(in, ch), opt);
  const MomentSet mab = transfer_moment_set(ch, opt);
  const double g2 = ch.gain * ch.gain;
  CovarianceDistortion d;
  d.x2_in = min.x2_central;
  d.x2_out = mout.x2_central;
  d.p2_in = min.p2_central;
  d.p2_out = mout.p2_central;
  d.cov_in = min.cov_xp;
  d.cov_out = mout.cov_xp;
  d.d_x2 = mout.x2_central - g2 * min.x2_central;
  d.d_p2 = mout.p2_central - g2 * min.p2_central;
  d.d_cov = mout.cov_xp - g2 * min.cov_xp;
  d.x2_AB = mab.x2_central;
  const double scale = std::max(1.0, std::abs(d.x2_out));
  if (std::abs(d.d_x2 - d.x2_AB) > 1e-6 * scale) {
    throw ConsistencyError("second-moment distortion depends on the input: " + std::to_string(d.d_x2) + " vs " +
                           std::to_string(d.x2_AB));
  }
  return d;
}

double squeezing_ratio(const CharFn& f, const MomentOptions& opt) {
  const MomentSet ms = moment_set(f, opt);
  if (!(std::abs(ms.p2_central) > 1e-14)) throw DegenerateStateError("momentum variance vanishes; squeezing undefined");
  return ms.x2_central / ms.p2_central;
}

SqueezingTransmission squeezing_transmission(const InputState& input, const Channel& ch, const MomentOptions& opt) {
  const CharFn in = input_charfn(input);
  SqueezingTransmission t;
  t.s_in = squeezing_ratio(in, opt);
  t.s_out = squeezing_ratio(teleport_charfn(in, ch), opt);
  t.quotient = t.s_out / t.s_in;
  return t;
}

}  // namespace cvtele
