#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cvtele/series.hpp"

namespace cvtele {

/// Point ξ = w + i z of one-mode conjugate phase space.
struct PhasePoint {
  double w = 0.0;
  double z = 0.0;

  std::complex<double> xi() const noexcept { return {w, z}; }
  double norm2() const noexcept { return w * w + z * z; }
  PhasePoint conjugate() const noexcept { return {w, -z}; }
  PhasePoint operator-() const noexcept { return {-w, -z}; }
  PhasePoint scaled(double g) const noexcept { return {g * w, g * z}; }
  bool finite() const noexcept;

  static PhasePoint from_complex(std::complex<double> xi) noexcept { return {xi.real(), xi.imag()}; }

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Operator ordering s of a characteristic function: χ⁽ˢ⁾(ξ) = e^{s|ξ|²/2} χ⁽⁰⁾(ξ).
enum class Ordering : int { antinormal = -1, symmetric = 0, normal = 1 };

/// Throws InvalidArgument unless s ∈ {−1, 0, 1}.
Ordering ordering_from_int(int s);
constexpr int to_int(Ordering s) noexcept { return static_cast<int>(s); }

/// An evaluatable one-mode characteristic function. Immutable; copies share
/// the underlying closure. When closed-form origin derivatives are known they
/// travel with the function as an OriginSeries.
class CharFn {
 public:
  using Eval = std::function<std::complex<double>(PhasePoint)>;

  CharFn(Eval eval, Ordering ordering, std::string label, std::optional<OriginSeries> series = std::nullopt);

  std::complex<double> operator()(PhasePoint p) const { return (*eval_)(p); }

  Ordering ordering() const noexcept { return ordering_; }
  const std::string& label() const noexcept { return label_; }
  /// Closed-form Taylor data at ξ = 0, or nullptr.
  const OriginSeries* series() const noexcept { return series_ ? &*series_ : nullptr; }

  /// Same function and ordering, closed-form data dropped. Used to force the
  /// finite-difference route.
  CharFn without_series() const;

 private:
  std::shared_ptr<const Eval> eval_;
  Ordering ordering_;
  std::string label_;
  std::optional<OriginSeries> series_;
};

/// g(ξ) = e^{(target − s)|ξ|²/2} f(ξ), g.ordering = target.
CharFn convert_ordering(const CharFn& f, int target_s);

/// Checked evaluation; throws InvalidArgument on a non-finite point.
std::complex<double> eval_at(const CharFn& f, PhasePoint p);

/// Pointwise product in the ordering of `lhs`.
CharFn multiply(const CharFn& lhs, const CharFn& rhs, std::string label);

}  // namespace cvtele
