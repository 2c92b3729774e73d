#include <doctest.h>

#include <cmath>

#include "cvtele/errors.hpp"
#include "cvtele/phasespace.hpp"
#include "cvtele/states.hpp"
#include "support.hpp"

using namespace cvtele;

namespace {

CharFn vacuum() { return input_charfn(FockInput(0)); }

}  // namespace

TEST_CASE("phase point algebra") {
  const PhasePoint p{0.3, -1.7};
  CHECK(p.norm2() == 0.3 * 0.3 + 1.7 * 1.7);
  CHECK(p.conjugate().conjugate() == p);
  CHECK(p.xi() == std::complex<double>(0.3, -1.7));
  CHECK(PhasePoint::from_complex(p.xi()) == p);
  CHECK((-p).w == -0.3);
  CHECK(p.scaled(2.0).z == -3.4);
}

TEST_CASE("ordering values") {
  CHECK(ordering_from_int(1) == Ordering::normal);
  CHECK(ordering_from_int(-1) == Ordering::antinormal);
  CHECK_THROWS_AS(ordering_from_int(2), InvalidArgument);
  CHECK_THROWS_AS(convert_ordering(vacuum(), -2), InvalidArgument);
}

TEST_CASE("convert_ordering to the same ordering leaves values unchanged") {
  const CharFn f = input_charfn(CoherentInput({0.4, 0.9}));
  const CharFn g = convert_ordering(f, 0);
  for (int i = 0; i < 10; ++i) {
    const auto p = testing::random_point(3.0);
    CHECK(g(p) == f(p));
  }
}

TEST_CASE("vacuum in normal ordering is identically one") {
  const CharFn g = convert_ordering(vacuum(), 1);
  CHECK(g.ordering() == Ordering::normal);
  for (int i = 0; i < 20; ++i) CHECK(std::abs(g(testing::random_point(4.0)) - 1.0) < 1e-14);
  CHECK(g({0, 0}) == std::complex<double>(1.0));
}

TEST_CASE("ordering round trip") {
  for (const auto& state : testing::extended_catalog()) {
    const CharFn f = input_charfn(state);
    const CharFn back = convert_ordering(convert_ordering(f, 1), 0);
    for (int i = 0; i < 100; ++i) {
      const auto p = testing::random_point(4.0);
      const auto a = f(p);
      const auto b = back(p);
      CHECK(std::abs(a - b) <= 1e-14 * std::max(std::abs(a), 1e-300) + 1e-300);
    }
  }
}

TEST_CASE("eval_at") {
  CHECK(std::abs(eval_at(vacuum(), {1.0, 1.0}) - std::exp(-1.0)) < 1e-15);
  CHECK_THROWS_AS(eval_at(vacuum(), {NAN, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(eval_at(vacuum(), {0.0, INFINITY}), InvalidArgument);
  // Real displacement, real ξ: the phase 2 Im(ξ) β vanishes.
  const CharFn coh = input_charfn(CoherentInput({1.3, 0.0}));
  for (double w : {0.2, 0.9, 2.1}) {
    const auto v = eval_at(coh, {w, 0.0});
    CHECK(v.imag() == 0.0);
    CHECK(std::abs(v.real() - std::exp(-w * w / 2)) < 1e-15);
  }
}

TEST_CASE("catalog states are normalized and Hermitian") {
  for (const auto& state : testing::extended_catalog()) {
    CAPTURE(to_descriptor(state));
    const CharFn f = input_charfn(state);
    CHECK(std::abs(eval_at(f, {0, 0}) - 1.0) <= 1e-14);
    for (int i = 0; i < 50; ++i) {
      const auto p = testing::random_point(4.0);
      CHECK(std::abs(f(-p) - std::conj(f(p))) <= 1e-13);
    }
  }
}

TEST_CASE("series follows ordering conversion and products") {
  const CharFn f = input_charfn(FockInput(1));
  const CharFn g = convert_ordering(f, 1);
  REQUIRE(g.series() != nullptr);
  // e^{u/2} e^{−u/2}(1 − u) = 1 − u
  CHECK(std::abs(g.series()->derivative(2, 0) + 2.0) < 1e-15);
  CHECK(std::abs(g.series()->derivative(4, 0)) < 1e-15);
  const CharFn sq = multiply(f, f, "sq");
  // (e^{−u/2}(1−u))² = e^{−u}(1 − 2u + u²): ∂²_w = 2(−1 − 2) = −6
  CHECK(std::abs(sq.series()->derivative(2, 0) + 6.0) < 1e-14);
  CHECK(f.without_series().series() == nullptr);
}
