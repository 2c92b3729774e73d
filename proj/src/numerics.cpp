#include "cvtele/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {

void QuadratureConfig::validate() const {
  if (radial_nodes < 8 || angular_nodes < 8) throw InvalidArgument("quadrature needs at least 8 nodes per direction");
  if (!(target_abs_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (max_refinements < 1) throw InvalidArgument("quadrature needs at least one refinement");
  if (cutoff_radius && !(*cutoff_radius > 0.0 && std::isfinite(*cutoff_radius))) {
    throw InvalidArgument("cutoff radius must be positive and finite");
  }
}

void DiffConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("difference step must be positive");
  if (richardson_levels < 1) throw InvalidArgument("richardson_levels must be at least 1");
}

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto rule = std::make_shared<GaussLegendreRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  const auto un = static_cast<unsigned>(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(un, x);
      const double pm = std::legendre(un - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    {
      const double p = std::legendre(un, x);
      const double pm = std::legendre(un - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [−1, 1] to [0, 1].
    rule->nodes[i] = 0.5 * (1.0 - x);
    rule->nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule->weights[i] = 0.5 * w;
    rule->weights[n - 1 - i] = 0.5 * w;
  }
  cache.emplace(n, rule);
  return rule;
}

namespace {

constexpr double kProbeStep = 0.25;
constexpr double kProbeMax = 256.0;
constexpr double kDecayThreshold = 1e-16;
constexpr double kMargin = 1.15;
constexpr int kBoundaryChecks = 512;
constexpr double kGrowth = 1.2;

// Integration domain: ξ = A η over the unit disk in η.
struct Domain {
  std::array<double, 4> a{};  // row-major 2×2
  double det = 0.0;
};

Domain circle(double radius) { return {{radius, 0.0, 0.0, radius}, radius * radius}; }

double magnitude(std::span<const std::complex<double>> v) {
  double m = 0.0;
  for (const auto& x : v) {
    const double a = std::abs(x);
    if (!std::isfinite(a)) throw InvalidArgument("integrand is not finite");
    m = std::max(m, a);
  }
  return m;
}

// Ellipse x^T Q x = 1 through the decay radii along the 0, π/4, π/2 and
// 3π/4 axes, or the enclosing circle when that ellipse is not valid.
Domain fit_ellipse(const std::array<double, 8>& reach) {
  std::array<double, 4> axis{};
  for (int j = 0; j < 4; ++j) axis[j] = std::max(reach[j], reach[j + 4]);
  const double rmax = *std::max_element(axis.begin(), axis.end());

  const double q11 = 1.0 / (axis[0] * axis[0]);
  const double q22 = 1.0 / (axis[2] * axis[2]);
  const double q12 = 0.5 * (1.0 / (axis[1] * axis[1]) - 1.0 / (axis[3] * axis[3]));
  const double det = q11 * q22 - q12 * q12;
  if (!(det > 0.0)) return circle(rmax);
  for (int k = 0; k < 8; ++k) {
    const double ang = k * std::numbers::pi / 4.0;
    const double x = reach[k] * std::cos(ang);
    const double y = reach[k] * std::sin(ang);
    if (q11 * x * x + 2.0 * q12 * x * y + q22 * y * y > 1.0 + 1e-12) return circle(rmax);
  }
  // A = Q^{−1/2} from the eigen-decomposition of Q.
  const double tr = q11 + q22;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (q11 - q22) * (q11 - q22) + q12 * q12));
  const double l1 = 0.5 * tr + disc;
  const double l2 = 0.5 * tr - disc;
  double vx = 1.0;
  double vy = 0.0;
  if (std::abs(q12) > 0.0) {
    vx = q12;
    vy = l1 - q11;
    const double nv = std::hypot(vx, vy);
    vx /= nv;
    vy /= nv;
  } else if (q22 > q11) {
    vx = 0.0;
    vy = 1.0;
  }
  const double s1 = 1.0 / std::sqrt(l1);
  const double s2 = 1.0 / std::sqrt(l2);
  Domain d;
  d.a = {s1 * vx * vx + s2 * vy * vy, (s1 - s2) * vx * vy, (s1 - s2) * vx * vy, s1 * vy * vy + s2 * vx * vx};
  d.det = s1 * s2;
  return d;
}

// Probe eight rays, fit an ellipse through the decay radii along the four
// axes and return the map from the unit disk onto it.
Domain probe_domain(const PlaneBatchFn& f, std::size_t count) {
  std::vector<std::complex<double>> buf(count);
  const int steps = static_cast<int>(kProbeMax / kProbeStep);
  constexpr int kRays = 8;
  std::array<std::vector<double>, kRays> mags;
  f({0.0, 0.0}, buf);
  double peak = magnitude(buf);
  for (int k = 0; k < kRays; ++k) {
    const double ang = k * std::numbers::pi / 4.0;
    const double c = std::cos(ang);
    const double s = std::sin(ang);
    mags[k].resize(steps);
    for (int i = 0; i < steps; ++i) {
      const double rho = (i + 1) * kProbeStep;
      f({rho * c, rho * s}, buf);
      mags[k][i] = magnitude(buf);
      peak = std::max(peak, mags[k][i]);
    }
  }
  if (peak == 0.0) return circle(1.0);
  const double threshold = kDecayThreshold * peak;
  std::array<double, kRays> reach{};
  for (int k = 0; k < kRays; ++k) {
    if (mags[k].back() >= threshold) throw InvalidArgument("integrand does not decay along the probe rays");
    int last = -1;
    for (int i = 0; i < steps; ++i) {
      if (mags[k][i] >= threshold) last = i;
    }
    reach[k] = (last + 2) * kProbeStep * kMargin;
  }
  Domain d = fit_ellipse(reach);

  // The four-ray fit can miss a rotated, elongated integrand; grow the
  // ellipse until the integrand has decayed on its whole boundary.
  for (int grow = 0; grow < 24; ++grow) {
    double edge = 0.0;
    for (int k = 0; k < kBoundaryChecks; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / kBoundaryChecks;
      const double ex = std::cos(phi);
      const double ey = std::sin(phi);
      f({d.a[0] * ex + d.a[1] * ey, d.a[2] * ex + d.a[3] * ey}, buf);
      edge = std::max(edge, magnitude(buf));
    }
    if (edge < threshold) return d;
    for (double& x : d.a) x *= kGrowth;
    d.det *= kGrowth * kGrowth;
  }
  throw InvalidArgument("integrand does not decay on any probed ellipse");
}

std::vector<std::complex<double>> polar_rule(const PlaneBatchFn& f, std::size_t count, const Domain& dom, int nr,
                                             int na) {
  const auto gl = gauss_legendre(nr);
  std::vector<std::complex<double>> acc(count);
  std::vector<std::complex<double>> ring(count);
  std::vector<std::complex<double>> buf(count);
  std::vector<double> cs(na);
  std::vector<double> sn(na);
  for (int k = 0; k < na; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / na;
    cs[k] = std::cos(phi);
    sn[k] = std::sin(phi);
  }
  for (int i = 0; i < nr; ++i) {
    const double rho = gl->nodes[i];
    std::fill(ring.begin(), ring.end(), std::complex<double>{});
    for (int k = 0; k < na; ++k) {
      const double ex = rho * cs[k];
      const double ey = rho * sn[k];
      f({dom.a[0] * ex + dom.a[1] * ey, dom.a[2] * ex + dom.a[3] * ey}, buf);
      for (std::size_t c = 0; c < count; ++c) ring[c] += buf[c];
    }
    const double wt = gl->weights[i] * rho * (2.0 * std::numbers::pi / na) * dom.det;
    for (std::size_t c = 0; c < count; ++c) acc[c] += wt * ring[c];
  }
  return acc;
}

}  // namespace

QuadratureResult integrate_plane(const PlaneBatchFn& f, std::size_t count, const QuadratureConfig& cfg) {
  cfg.validate();
  if (count == 0) return {};
  const Domain dom = cfg.cutoff_radius ? circle(*cfg.cutoff_radius) : probe_domain(f, count);

  int nr = cfg.radial_nodes;
  int na = cfg.angular_nodes;
  auto prev = polar_rule(f, count, dom, nr, na);
  double err = 0.0;
  for (int level = 1; level <= cfg.max_refinements; ++level) {
    nr *= 2;
    na *= 2;
    auto next = polar_rule(f, count, dom, nr, na);
    err = 0.0;
    for (std::size_t c = 0; c < count; ++c) err = std::max(err, std::abs(next[c] - prev[c]));
    prev = std::move(next);
    if (err <= cfg.target_abs_tol) return {std::move(prev), err, nr, na};
  }
  throw AccuracyError("plane quadrature did not reach tolerance " + std::to_string(cfg.target_abs_tol) +
                          " (estimate " + std::to_string(err) + ")",
                      err);
}

std::complex<double> integrate_plane(const PlaneFn& f, const QuadratureConfig& cfg) {
  auto batch = [&f](PhasePoint p, std::span<std::complex<double>> out) { out[0] = f(p); };
  return integrate_plane(PlaneBatchFn(batch), 1, cfg).values[0];
}

namespace {

struct Stencil {
  int half = 0;
  std::array<double, 7> c{};  // offsets −3..3
  double at(int j) const { return c[j + 3]; }
};

Stencil stencil(int order) {
  switch (order) {
    case 0: return {0, {0, 0, 0, 1, 0, 0, 0}};
    case 1: return {1, {0, 0, -0.5, 0, 0.5, 0, 0}};
    case 2: return {1, {0, 0, 1, -2, 1, 0, 0}};
    case 3: return {2, {0, -0.5, 1, 0, -1, 0.5, 0}};
    case 4: return {2, {0, 1, -4, 6, -4, 1, 0}};
    case 5: return {3, {-0.5, 2, -2.5, 0, 2.5, -2, 0.5}};
    default: return {3, {1, -6, 15, -20, 15, -6, 1}};
  }
}

std::complex<double> central_difference(const PlaneFn& f, const Stencil& sw, const Stencil& sz, int order, double h) {
  std::complex<double> acc{};
  for (int i = -sw.half; i <= sw.half; ++i) {
    const double cw = sw.at(i);
    if (cw == 0.0) continue;
    for (int j = -sz.half; j <= sz.half; ++j) {
      const double cz = sz.at(j);
      if (cz == 0.0) continue;
      acc += (cw * cz) * f({i * h, j * h});
    }
  }
  return acc / std::pow(h, order);
}

// Shrinks the base step for functions that vary on a scale shorter than
// one: the relative curvature at the origin sets the length scale.
double scaled_step(const PlaneFn& f, double step) {
  const auto f0 = f({0.0, 0.0});
  const double ref = std::max(std::abs(f0), 1e-300);
  const double hh = step * step;
  const double cww = std::abs(f({step, 0.0}) - 2.0 * f0 + f({-step, 0.0})) / hh;
  const double czz = std::abs(f({0.0, step}) - 2.0 * f0 + f({0.0, -step})) / hh;
  const double kappa = std::max(cww, czz) / ref;
  if (!std::isfinite(kappa) || kappa <= 1.0) return step;
  return step / std::sqrt(kappa);
}

}  // namespace

std::complex<double> derivative_at_origin(const PlaneFn& f, int nw, int nz, const DiffConfig& cfg) {
  cfg.validate();
  if (nw < 0 || nz < 0) throw InvalidArgument("derivative orders must be nonnegative");
  const int order = nw + nz;
  if (order > 6) throw CapacityError("derivative order " + std::to_string(order) + " exceeds 6");
  if (order == 0) return f({0.0, 0.0});

  const Stencil sw = stencil(nw);
  const Stencil sz = stencil(nz);
  const double h0 = scaled_step(f, cfg.step);
  const int rows = cfg.richardson_levels + 1;
  std::vector<std::vector<std::complex<double>>> t(rows);
  std::complex<double> best = central_difference(f, sw, sz, order, h0);
  double best_err = std::numeric_limits<double>::infinity();
  double h = h0;
  for (int j = 0; j < rows; ++j) {
    t[j].resize(j + 1);
    t[j][0] = central_difference(f, sw, sz, order, h);
    double factor = 1.0;
    for (int i = 1; i <= j; ++i) {
      factor *= 4.0;
      t[j][i] = t[j][i - 1] + (t[j][i - 1] - t[j - 1][i - 1]) / (factor - 1.0);
      const double err = std::max(std::abs(t[j][i] - t[j][i - 1]), std::abs(t[j][i] - t[j - 1][i - 1]));
      if (err <= best_err) {
        best_err = err;
        best = t[j][i];
      }
    }
    h *= 0.5;
  }
  return best;
}

}  // namespace cvtele
