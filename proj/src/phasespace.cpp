#include "cvtele/phasespace.hpp"

#include <cmath>
#include <utility>

#include "cvtele/errors.hpp"

namespace cvtele {

bool PhasePoint::finite() const noexcept { return std::isfinite(w) && std::isfinite(z); }

Ordering ordering_from_int(int s) {
  if (s < -1 || s > 1) throw InvalidArgument("unsupported ordering s = " + std::to_string(s) + " (expected -1, 0 or 1)");
  return static_cast<Ordering>(s);
}

CharFn::CharFn(Eval eval, Ordering ordering, std::string label, std::optional<OriginSeries> series)
    : eval_(std::make_shared<const Eval>(std::move(eval))),
      ordering_(ordering),
      label_(std::move(label)),
      series_(std::move(series)) {
  ordering_from_int(to_int(ordering));
}

CharFn CharFn::without_series() const {
  CharFn copy = *this;
  copy.series_.reset();
  return copy;
}

CharFn convert_ordering(const CharFn& f, int target_s) {
  const Ordering target = ordering_from_int(target_s);
  const int shift = target_s - to_int(f.ordering());
  if (shift == 0) return f;

  const double half = 0.5 * shift;
  std::optional<OriginSeries> series;
  if (const OriginSeries* s = f.series()) series = OriginSeries::radial_gaussian(half) * (*s);

  return CharFn([f, half](PhasePoint p) { return std::exp(half * p.norm2()) * f(p); }, target,
                f.label() + "|s=" + std::to_string(target_s), std::move(series));
}

std::complex<double> eval_at(const CharFn& f, PhasePoint p) {
  if (!p.finite()) throw InvalidArgument("characteristic function evaluated at a non-finite point");
  return f(p);
}

CharFn multiply(const CharFn& lhs, const CharFn& rhs, std::string label) {
  std::optional<OriginSeries> series;
  if (lhs.series() && rhs.series()) series = (*lhs.series()) * (*rhs.series());
  return CharFn([lhs, rhs](PhasePoint p) { return lhs(p) * rhs(p); }, lhs.ordering(), std::move(label),
                std::move(series));
}

}  // namespace cvtele
