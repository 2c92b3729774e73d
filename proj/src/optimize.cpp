#include "cvtele/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cvtele/channel.hpp"
#include "cvtele/errors.hpp"

namespace cvtele {

std::string_view to_string(ObjectiveKind kind) noexcept {
  switch (kind) {
    case ObjectiveKind::x2_transfer: return "x2_transfer";
    case ObjectiveKind::kappa4_transfer: return "kappa4_transfer";
    case ObjectiveKind::n_transfer: return "n_transfer";
    case ObjectiveKind::mu4_x: return "mu4_x";
    case ObjectiveKind::mu4_p: return "mu4_p";
    case ObjectiveKind::d_functional: return "d_functional";
    case ObjectiveKind::one_minus_fidelity: return "one_minus_fidelity";
    case ObjectiveKind::frobenius: return "frobenius";
  }
  return "unknown";
}

ObjectiveKind objective_kind_from_string(std::string_view name) {
  for (auto k : {ObjectiveKind::x2_transfer, ObjectiveKind::kappa4_transfer, ObjectiveKind::n_transfer,
                 ObjectiveKind::mu4_x, ObjectiveKind::mu4_p, ObjectiveKind::d_functional,
                 ObjectiveKind::one_minus_fidelity, ObjectiveKind::frobenius}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown objective kind '" + std::string(name) + "'");
}

bool needs_input(ObjectiveKind kind) noexcept {
  switch (kind) {
    case ObjectiveKind::x2_transfer:
    case ObjectiveKind::kappa4_transfer:
    case ObjectiveKind::n_transfer: return false;
    default: return true;
  }
}

void Objective::validate() const {
  if (needs_input(kind) && !input) {
    throw InvalidArgument("objective " + std::string(to_string(kind)) + " needs an input state");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be finite and >= 0");
  if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("gain must be positive");
  if (!std::isfinite(theta)) throw InvalidArgument("theta must be finite");
}

double Objective::operator()(double delta) const {
  const Channel ch(SqueezedBellResource(delta, theta, r), g);
  MomentOptions opt = moments;
  switch (kind) {
    case ObjectiveKind::x2_transfer:
    case ObjectiveKind::kappa4_transfer:
    case ObjectiveKind::n_transfer: {
      if (source == DerivativeSource::closed_form) {
        const auto cf = resource_closed_forms(ch.resource);
        if (kind == ObjectiveKind::x2_transfer) return cf.x2_AB;
        if (kind == ObjectiveKind::kappa4_transfer) return cf.kappa4_AB;
        return cf.n_AB;
      }
      opt.source = source;
      const MomentSet ms = transfer_moment_set(ch, opt);
      if (kind == ObjectiveKind::x2_transfer) return ms.x2_central;
      if (kind == ObjectiveKind::kappa4_transfer) return ms.kappa4_x;
      return ms.n_mean;
    }
    case ObjectiveKind::mu4_x:
    case ObjectiveKind::mu4_p: {
      const CharFn in = input_charfn(*input);
      const MomentSet min = moment_set(in, opt);
      const MomentSet mout = moment_set(teleport_charfn(in, ch), opt);
      const double g4 = g * g * g * g;
      if (kind == ObjectiveKind::mu4_x) return std::abs(mout.mu4_x - g4 * min.mu4_x);
      return std::abs(mout.mu4_p - g4 * min.mu4_p);
    }
    case ObjectiveKind::d_functional:
    case ObjectiveKind::one_minus_fidelity:
    case ObjectiveKind::frobenius: {
      const auto m = distortion_measures(*input, teleport(*input, ch), N, quadrature);
      if (kind == ObjectiveKind::d_functional) return m.d_n;
      if (kind == ObjectiveKind::one_minus_fidelity) return 1.0 - m.fidelity;
      return m.frobenius;
    }
  }
  throw InvalidArgument("unknown objective kind");
}

OptimumRecord minimize_on_unit_interval(const std::function<double(double)>& f) {
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError("objective is not finite at Delta = " + std::to_string(x), x);
    return v;
  };
  constexpr int n = kCoarseGridPoints;
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(i) / (n - 1);
    fs[i] = eval(xs[i]);
  }
  // Lowest interior local minimum; otherwise the global grid minimum.
  int best = -1;
  for (int i = 1; i + 1 < n; ++i) {
    if (fs[i] < fs[i - 1] && fs[i] <= fs[i + 1] && (best < 0 || fs[i] < fs[best])) best = i;
  }
  if (best < 0) best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());

  OptimumRecord rec;
  rec.bracket_lo = xs[std::max(best - 1, 0)];
  rec.bracket_hi = xs[std::min(best + 1, n - 1)];
  rec.delta_star = xs[best];
  rec.objective_value = fs[best];

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = rec.bracket_lo;
  double b = rec.bracket_hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  int iter = 0;
  while (b - a > kDeltaTolerance) {
    ++iter;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = eval(x);
  rec.iterations = iter;
  if (fx < rec.objective_value) {
    rec.delta_star = x;
    rec.objective_value = fx;
  } else if (fx == rec.objective_value && x < rec.delta_star) {
    rec.delta_star = x;
  }
  return rec;
}

OptimumRecord minimize_delta(const Objective& obj) {
  obj.validate();
  OptimumRecord rec = minimize_on_unit_interval([&obj](double d) { return obj(d); });
  rec.r = obj.r;
  rec.kind = obj.kind;
  return rec;
}

std::string_view to_string(ClosedFormDelta kind) noexcept {
  switch (kind) {
    case ClosedFormDelta::fock1_fidelity: return "fock1_fidelity";
    case ClosedFormDelta::coherent_fidelity: return "coherent_fidelity";
    case ClosedFormDelta::coherent_mu4_x: return "coherent_mu4_x";
    case ClosedFormDelta::squeezed_mu4_x: return "squeezed_mu4_x";
    case ClosedFormDelta::fock1_mu4_x: return "fock1_mu4_x";
    case ClosedFormDelta::squeezed_mu4_p: return "squeezed_mu4_p";
  }
  return "unknown";
}

bool needs_squeezing(ClosedFormDelta kind) noexcept {
  return kind == ClosedFormDelta::squeezed_mu4_x || kind == ClosedFormDelta::squeezed_mu4_p;
}

namespace {

// √(1 + q/√(q·w)) / √2 with q = a², the shape shared by the μ⁴ optima.
double mu4_shape(double a2, double w) { return std::sqrt(1.0 + a2 / std::sqrt(a2 * w)) / std::sqrt(2.0); }

double coherent_mu4(double e) {
  const double a = 3.0 + e;
  return mu4_shape(a * a, 13.0 + 2.0 * e * (5.0 + e));
}

}  // namespace

double closed_form_delta(ClosedFormDelta kind, double r, std::optional<double> s) {
  if (!std::isfinite(r)) throw InvalidArgument("r must be finite");
  if (needs_squeezing(kind) && !s) {
    throw InvalidArgument(std::string(to_string(kind)) + " needs the input squeezing s");
  }
  const double e = std::exp(2.0 * r);
  switch (kind) {
    case ClosedFormDelta::fock1_fidelity: {
      const double arg = std::exp(-2.0 * r) * (1.0 - e + e * e + 3.0 * e * e * e) / (3.0 * (e - 1.0) * (e - 1.0));
      return std::cos(0.5 * std::atan(arg));
    }
    case ClosedFormDelta::coherent_fidelity: return std::cos(0.5 * std::atan(1.0 + std::exp(-2.0 * r)));
    case ClosedFormDelta::coherent_mu4_x: return coherent_mu4(e);
    case ClosedFormDelta::squeezed_mu4_x: {
      const double es = std::exp(2.0 * *s);
      const double a = e + 3.0 * es;
      return mu4_shape(a * a, 2.0 * e * e + 13.0 * es * es + 10.0 * e * es);
    }
    case ClosedFormDelta::fock1_mu4_x: {
      const double a = 1.0 + e;
      return mu4_shape(3.0 * a * a, (13.0 + 30.0 * e + 18.0 * e * e) / 3.0);
    }
    case ClosedFormDelta::squeezed_mu4_p: return coherent_mu4(std::exp(2.0 * (r + *s)));
  }
  throw InvalidArgument("unknown closed-form kind");
}

std::vector<OptimumRecord> sweep_r(const std::vector<ObjectiveKind>& kinds, const std::vector<double>& r_grid,
                                   const Objective& base, int jobs) {
  if (kinds.empty() || r_grid.empty()) throw InvalidArgument("sweep needs nonempty kind and r grids");
  const std::size_t cells = kinds.size() * r_grid.size();
  std::vector<OptimumRecord> out(cells);
  auto run_cell = [&](std::size_t idx) {
    Objective obj = base;
    obj.kind = kinds[idx / r_grid.size()];
    obj.r = r_grid[idx % r_grid.size()];
    try {
      out[idx] = minimize_delta(obj);
    } catch (const std::exception& ex) {
      OptimumRecord rec;
      rec.kind = obj.kind;
      rec.r = obj.r;
      rec.error = ex.what();
      out[idx] = rec;
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp<std::size_t>(jobs < 1 ? 1 : jobs, 1, cells));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells; ++i) run_cell(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells; i = next++) run_cell(i);
    });
  }
  pool.clear();
  return out;
}

}  // namespace cvtele
