#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cvtele/errors.hpp"
#include "cvtele/states.hpp"
#include "support.hpp"

using namespace cvtele;

TEST_CASE("Fock characteristic functions") {
  const CharFn f1 = input_charfn(FockInput(1));
  CHECK(std::abs(f1({1.0, 0.0})) < 1e-16);
  CHECK(std::abs(f1({0.6, 0.8})) < 1e-16);
  const CharFn f0 = fock_charfn(0);
  for (int i = 0; i < 10; ++i) {
    const auto p = testing::random_point(3.0);
    CHECK(std::abs(f0(p) - std::exp(-p.norm2() / 2)) < 1e-15);
    CHECK(std::abs(f1(p) - std::exp(-p.norm2() / 2) * (1 - p.norm2())) < 1e-15);
  }
  const double u = 0.7;
  const auto v = fock_charfn(5)({std::sqrt(u), 0.0}).real();
  CHECK(std::abs(v - std::exp(-u / 2) * testing::laguerre_bruteforce(5, u)) < 1e-12);
}

TEST_CASE("Laguerre recurrence against the term-by-term sum") {
  std::vector<double> vals(21);
  for (double u : {0.0, 0.05, 0.7, 2.3, 6.0, 11.0}) {
    fock_charfn_values(u, vals);
    for (int n = 0; n <= 20; ++n) {
      CAPTURE(n);
      CAPTURE(u);
      // The alternating sum cancels; its error scales with Σ|terms|.
      const double scale = std::exp(-u / 2) * testing::laguerre_abs_terms(n, u);
      CHECK(std::abs(vals[n] - std::exp(-u / 2) * testing::laguerre_bruteforce(n, u)) < 1e-14 * scale + 1e-15);
    }
  }
}

TEST_CASE("Fock capacity") {
  CHECK_NOTHROW(fock_charfn(64));
  CHECK_THROWS_AS(fock_charfn(65), CapacityError);
  CHECK_THROWS_AS(fock_charfn(10, 8), CapacityError);
  CHECK_THROWS_AS(FockInput(-1), InvalidArgument);
  CHECK_THROWS_AS(input_charfn(FockMixtureInput({{70, 1.0}})), CapacityError);
}

TEST_CASE("degenerate parameters reduce to vacuum") {
  const CharFn coh = input_charfn(CoherentInput({0.0, 0.0}));
  const CharFn sq = input_charfn(SqueezedVacuumInput(0.0));
  for (int i = 0; i < 10; ++i) {
    const auto p = testing::random_point(3.0);
    const double vac = std::exp(-p.norm2() / 2);
    CHECK(std::abs(coh(p) - vac) < 1e-15);
    CHECK(std::abs(sq(p) - vac) < 1e-15);
  }
}

TEST_CASE("squeezed vacuum matches the ξ' form") {
  const double s = 0.8;
  const CharFn f = input_charfn(SqueezedVacuumInput(s));
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::random_point(2.0);
    const auto xi = p.xi();
    const auto xp = xi * std::cosh(s) + std::conj(xi) * std::sinh(s);
    CHECK(std::abs(f(p) - std::exp(-std::norm(xp) / 2)) < 1e-14);
  }
}

TEST_CASE("coherent state matches the displacement form") {
  const std::complex<double> beta(0.9, -0.35);
  const CharFn f = input_charfn(CoherentInput(beta));
  for (int i = 0; i < 20; ++i) {
    const auto xi = testing::random_point(3.0).xi();
    const auto want = std::exp(-std::norm(xi) / 2 + xi * std::conj(beta) - std::conj(xi) * beta);
    CHECK(std::abs(f(PhasePoint::from_complex(xi)) - want) < 1e-14);
  }
}

TEST_CASE("mixture validation") {
  CHECK_THROWS_AS(FockMixtureInput({{0, 0.5}, {1, 0.4}}), InvalidArgument);
  CHECK_THROWS_AS(FockMixtureInput({{0, 1.2}, {1, -0.2}}), InvalidArgument);
  CHECK_THROWS_AS(FockMixtureInput({}), InvalidArgument);
  CHECK_NOTHROW(FockMixtureInput({{0, 0.5}, {1, 0.5 + 5e-13}}));
  const CharFn mix = input_charfn(FockMixtureInput({{0, 0.5}, {1, 0.5}}));
  const auto p = PhasePoint{0.4, 0.3};
  const double u = p.norm2();
  CHECK(std::abs(mix(p) - std::exp(-u / 2) * (1.0 - 0.5 * u)) < 1e-15);
}

TEST_CASE("input photon probabilities") {
  const auto f = input_photon_probs(FockInput(1), 3);
  CHECK(f == std::vector<double>{0, 1, 0, 0});
  CHECK(input_photon_probs(FockInput(5), 3) == std::vector<double>{0, 0, 0, 0});
  CHECK_THROWS_AS(input_photon_probs(FockInput(1), -1), InvalidArgument);

  auto mean = [](const std::vector<double>& p) {
    double m = 0;
    for (std::size_t n = 0; n < p.size(); ++n) m += n * p[n];
    return m;
  };
  const auto coh = input_photon_probs(CoherentInput({2.12928, 0.0}), 60);
  CHECK(std::abs(mean(coh) - 4.534) < 1e-3);
  CHECK(std::abs(mean(coh) - 2.12928 * 2.12928) < 1e-10);

  const auto sq = input_photon_probs(SqueezedVacuumInput(1.5), 400);
  for (std::size_t n = 1; n < sq.size(); n += 2) CHECK(sq[n] == 0.0);
  CHECK(std::abs(mean(sq) - std::sinh(1.5) * std::sinh(1.5)) < 1e-6);
  CHECK(std::abs(mean(sq) - 4.534) < 1e-3);

  // P_2 = tanh²s / (2 cosh s) from the closed form.
  const double s = 0.4;
  const auto small = input_photon_probs(SqueezedVacuumInput(s), 4);
  CHECK(std::abs(small[2] - std::tanh(s) * std::tanh(s) / (2 * std::cosh(s))) < 1e-15);
  CHECK(std::abs(small[4] - 3.0 / 8.0 * std::pow(std::tanh(s), 4) / std::cosh(s)) < 1e-15);

  for (const auto& state : testing::extended_catalog()) {
    double prev = 0.0;
    for (int N : {4, 16, 64, 256}) {
      const auto p = input_photon_probs(state, N);
      for (double x : p) CHECK(x >= 0.0);
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      CHECK(total <= 1.0 + 1e-12);
      CHECK(total >= prev);
      prev = total;
    }
    CHECK(prev > 1.0 - 1e-6);
  }
}

TEST_CASE("resource validation") {
  CHECK_THROWS_AS(SqueezedBellResource(1.1, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(SqueezedBellResource(-0.1, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(SqueezedBellResource(0.5, 0, -1), InvalidArgument);
  CHECK_THROWS_AS(Channel(SqueezedBellResource(0.5, 0, 1), 0.0), InvalidArgument);
}

TEST_CASE("two-mode resource properties") {
  for (int i = 0; i < 20; ++i) {
    const auto res = testing::random_resource();
    CHECK(squeezed_bell_charfn(res, 0, 0) == std::complex<double>(1.0));
  }
  // Δ = 1: brace is 1, only the envelope survives.
  const SqueezedBellResource tmsv(1.0, 0.3, 0.9);
  const std::complex<double> a(0.3, -0.2), b(-0.5, 0.7);
  const auto pa = std::cosh(0.9) * a - std::sinh(0.9) * std::conj(b);
  const auto pb = std::cosh(0.9) * b - std::sinh(0.9) * std::conj(a);
  CHECK(std::abs(squeezed_bell_charfn(tmsv, a, b) - std::exp(-(std::norm(pa) + std::norm(pb)) / 2)) < 1e-15);
}

TEST_CASE("transfer function") {
  for (int i = 0; i < 20; ++i) {
    const Channel ch(testing::random_resource());
    CHECK(transfer_fn(ch)({0, 0}) == std::complex<double>(1.0));
  }
  const Channel tmsv(SqueezedBellResource(1.0, 0.0, 1.25));
  CHECK(std::abs(transfer_fn(tmsv)({1.0, 0.0}) - std::exp(-std::exp(-2.5))) < 1e-15);
  for (int i = 0; i < 100; ++i) {
    const double r = testing::uniform(0.0, 3.0);
    const Channel ch(SqueezedBellResource(1.0, testing::uniform(-3, 3), r));
    const auto p = testing::random_point(4.0);
    CHECK(std::abs(transfer_fn(ch)(p) - std::exp(-p.norm2() * std::exp(-2 * r))) <= 1e-14);
  }
  const Channel epr(SqueezedBellResource(0.7, 0.0, 10.0));
  const CharFn tau = transfer_fn(epr);
  for (int i = 0; i < 100; ++i) CHECK(std::abs(tau(testing::random_point(2.0)) - 1.0) < 1e-3);
}

TEST_CASE("reduced transfer form against the two-mode function") {
  for (double g : {1.0, 0.6, 1.3}) {
    for (int i = 0; i < 200; ++i) {
      const auto res = testing::random_resource();
      const Channel ch(res, g);
      const auto p = testing::random_point(3.0);
      const auto xi = p.xi();
      const auto want = squeezed_bell_charfn(res, g * std::conj(xi), xi);
      CAPTURE(g);
      CHECK(std::abs(transfer_fn(ch)(p) - want) <= 1e-13);
      CHECK(std::abs(transfer_value(ch, p.norm2()) - want.real()) <= 1e-13);
    }
  }
  // The γ form printed for g = 1.
  const double d = 0.8, th = 0.4, r = 0.9;
  const Channel ch(SqueezedBellResource(d, th, r));
  for (double u : {0.1, 1.0, 3.7}) {
    const double gam = u * std::exp(-2 * r);
    const double want = std::exp(-gam) * (d * d + 2 * d * std::sqrt(1 - d * d) * std::cos(th) * gam +
                                          (1 - d * d) * (1 - gam) * (1 - gam));
    CHECK(std::abs(transfer_value(ch, u) - want) < 1e-14);
  }
}

TEST_CASE("state descriptors") {
  CHECK(std::get<FockInput>(parse_state_descriptor("fock:3")).n == 3);
  const auto coh = std::get<CoherentInput>(parse_state_descriptor("coherent:2.12928"));
  CHECK(coh.beta == std::complex<double>(2.12928, 0.0));
  CHECK(std::get<CoherentInput>(parse_state_descriptor("coherent:1,-0.5")).beta == std::complex<double>(1, -0.5));
  CHECK(std::get<SqueezedVacuumInput>(parse_state_descriptor("sqvac:1.5")).s == 1.5);
  const auto mix = std::get<FockMixtureInput>(parse_state_descriptor("mix:0@0.5,1@0.5"));
  REQUIRE(mix.weights.size() == 2);
  CHECK(mix.weights[1].n == 1);
  for (const char* bad : {"fock", "fock:x", "fock:-1", "coherent:1,2,3", "sqvac:", "mix:0@0.5", "mix:1", "cat:1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_state_descriptor(bad), InvalidArgument);
  }
  for (const char* text : {"fock:7", "coherent:0.25", "coherent:1,-0.5", "sqvac:-0.3", "mix:0@0.25,3@0.75"}) {
    CHECK(to_descriptor(parse_state_descriptor(text)) == text);
  }
}
