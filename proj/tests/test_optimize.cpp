#include <doctest.h>

#include <cmath>

#include "cvtele/errors.hpp"
#include "cvtele/optimize.hpp"
#include "support.hpp"

using namespace cvtele;

namespace {

const double kDelta2 = std::sqrt(2.0 + std::sqrt(2.0)) / 2.0;

Objective make(ObjectiveKind kind, double r, std::optional<InputState> in = std::nullopt) {
  Objective o;
  o.kind = kind;
  o.r = r;
  o.input = std::move(in);
  return o;
}

void check_local_certificate(const Objective& obj, const OptimumRecord& rec) {
  const double f = obj(rec.delta_star);
  if (rec.delta_star - 1e-3 >= 0.0) CHECK(f <= obj(rec.delta_star - 1e-3));
  if (rec.delta_star + 1e-3 <= 1.0) CHECK(f <= obj(rec.delta_star + 1e-3));
}

}  // namespace

TEST_CASE("objective kind names") {
  for (auto k : {ObjectiveKind::x2_transfer, ObjectiveKind::kappa4_transfer, ObjectiveKind::n_transfer,
                 ObjectiveKind::mu4_x, ObjectiveKind::mu4_p, ObjectiveKind::d_functional,
                 ObjectiveKind::one_minus_fidelity, ObjectiveKind::frobenius}) {
    CHECK(objective_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(objective_kind_from_string("fidelity"), InvalidArgument);
  CHECK_THROWS_AS(minimize_delta(make(ObjectiveKind::d_functional, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(minimize_delta(make(ObjectiveKind::mu4_x, 1.0)), InvalidArgument);
}

TEST_CASE("second-moment optimum is r independent") {
  for (auto source : {DerivativeSource::closed_form, DerivativeSource::automatic, DerivativeSource::finite_difference}) {
    for (double r : {0.5, 1.25, 2.5, 4.0}) {
      auto obj = make(ObjectiveKind::x2_transfer, r);
      obj.source = source;
      const auto rec = minimize_delta(obj);
      CHECK(std::abs(rec.delta_star - kDelta2) < 1e-4);
      CHECK(rec.r == r);
      CHECK(rec.kind == ObjectiveKind::x2_transfer);
      CHECK(rec.bracket_lo <= rec.delta_star);
      CHECK(rec.bracket_hi >= rec.delta_star);
      CHECK(rec.iterations > 0);
      check_local_certificate(obj, rec);
    }
  }
}

TEST_CASE("fourth-cumulant optimum") {
  double first = -1.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const auto rec = minimize_delta(make(ObjectiveKind::kappa4_transfer, r));
    CHECK(std::abs(rec.delta_star - 0.985294) < 1e-3);
    if (first < 0) first = rec.delta_star;
    CHECK(std::abs(rec.delta_star - first) < 1e-5);
  }
  auto fd = make(ObjectiveKind::kappa4_transfer, 1.0);
  fd.source = DerivativeSource::finite_difference;
  CHECK(std::abs(minimize_delta(fd).delta_star - 0.985294) < 1e-3);
}

TEST_CASE("photon-number optimum shared by printed and derivative forms") {
  for (double r : {0.75, 1.5}) {
    auto printed = make(ObjectiveKind::n_transfer, r);
    auto fd = printed;
    fd.source = DerivativeSource::finite_difference;
    const auto a = minimize_delta(printed);
    const auto b = minimize_delta(fd);
    CHECK(std::abs(a.delta_star - b.delta_star) < 1e-4);
    CHECK(std::abs(a.objective_value - (b.objective_value - 1.0)) < 1e-6);
  }
}

TEST_CASE("tie-break and failures") {
  const auto flat = minimize_on_unit_interval([](double) { return 2.0; });
  CHECK(flat.delta_star == 0.0);
  CHECK(flat.objective_value == 2.0);
  const auto edge = minimize_on_unit_interval([](double d) { return -d; });
  CHECK(edge.delta_star > 1 - 1e-6);
  const auto quad = minimize_on_unit_interval([](double d) { return (d - 0.3141) * (d - 0.3141); });
  CHECK(std::abs(quad.delta_star - 0.3141) < 1e-6);
  try {
    minimize_on_unit_interval([](double d) { return d > 0.5 ? NAN : d; });
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(e.delta() > 0.5);
  }
}

TEST_CASE("printed closed-form optima") {
  CHECK(std::abs(closed_form_delta(ClosedFormDelta::coherent_fidelity, 20.0) - std::cos(std::numbers::pi / 8)) < 1e-6);
  for (auto k : {ClosedFormDelta::fock1_fidelity, ClosedFormDelta::coherent_fidelity, ClosedFormDelta::coherent_mu4_x,
                 ClosedFormDelta::squeezed_mu4_x, ClosedFormDelta::fock1_mu4_x, ClosedFormDelta::squeezed_mu4_p}) {
    CAPTURE(to_string(k));
    CHECK(std::abs(closed_form_delta(k, 20.0, 1.5) - kDelta2) < 1e-3);
    for (double r = 0.1; r <= 30.0; r += 0.7) {
      for (double s = 0.0; s <= 3.0; s += 0.5) {
        const double d = closed_form_delta(k, r, s);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
      }
    }
  }
  for (double r : {0.3, 1.0, 2.2}) {
    CHECK(std::abs(closed_form_delta(ClosedFormDelta::squeezed_mu4_x, r, 0.0) -
                   closed_form_delta(ClosedFormDelta::coherent_mu4_x, r)) < 1e-12);
    CHECK(std::abs(closed_form_delta(ClosedFormDelta::squeezed_mu4_p, r, 0.0) -
                   closed_form_delta(ClosedFormDelta::coherent_mu4_x, r)) < 1e-12);
  }
  CHECK_THROWS_AS(closed_form_delta(ClosedFormDelta::squeezed_mu4_x, 1.0), InvalidArgument);
  CHECK_NOTHROW(closed_form_delta(ClosedFormDelta::coherent_mu4_x, 1.0));
}

TEST_CASE("fourth central moment optima match the printed formulas") {
  for (double r : {0.5, 1.0, 1.75}) {
    const auto coh = minimize_delta(make(ObjectiveKind::mu4_x, r, CoherentInput({0.8, 0.0})));
    CHECK(std::abs(coh.delta_star - closed_form_delta(ClosedFormDelta::coherent_mu4_x, r)) < 1e-5);
    const auto f1 = minimize_delta(make(ObjectiveKind::mu4_x, r, FockInput(1)));
    CHECK(std::abs(f1.delta_star - closed_form_delta(ClosedFormDelta::fock1_mu4_x, r)) < 1e-5);
    for (double s : {0.4, 1.5}) {
      const auto sx = minimize_delta(make(ObjectiveKind::mu4_x, r, SqueezedVacuumInput(s)));
      CHECK(std::abs(sx.delta_star - closed_form_delta(ClosedFormDelta::squeezed_mu4_x, r, s)) < 1e-5);
      const auto sp = minimize_delta(make(ObjectiveKind::mu4_p, r, SqueezedVacuumInput(s)));
      CHECK(std::abs(sp.delta_star - closed_form_delta(ClosedFormDelta::squeezed_mu4_p, r, s)) < 1e-5);
    }
  }
}

TEST_CASE("fidelity optima match the printed formulas") {
  for (double r : {0.75, 1.0, 1.25, 2.5}) {
    const auto coh = minimize_delta(make(ObjectiveKind::one_minus_fidelity, r, CoherentInput({2.12928, 0.0})));
    CHECK(std::abs(coh.delta_star - closed_form_delta(ClosedFormDelta::coherent_fidelity, r)) < 1e-3);
  }
  for (double r : {0.75, 1.5}) {
    const auto f1 = minimize_delta(make(ObjectiveKind::one_minus_fidelity, r, FockInput(1)));
    CHECK(std::abs(f1.delta_star - closed_form_delta(ClosedFormDelta::fock1_fidelity, r)) < 1e-3);
  }
}

TEST_CASE("sweeps") {
  Objective base;
  base.input = FockInput(0);
  const std::vector<double> rs{0.75, 2.5};
  const auto recs = sweep_r({ObjectiveKind::one_minus_fidelity, ObjectiveKind::d_functional}, rs, base, 2);
  REQUIRE(recs.size() == 4);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK_FALSE(recs[i].error);
    CHECK(recs[i].r == rs[i % 2]);
    CHECK(recs[i].kind == (i < 2 ? ObjectiveKind::one_minus_fidelity : ObjectiveKind::d_functional));
  }
  // The two optima approach each other as r grows.
  CHECK(std::abs(recs[1].delta_star - recs[3].delta_star) < std::abs(recs[0].delta_star - recs[2].delta_star));

  Objective fd;
  fd.source = DerivativeSource::finite_difference;
  const std::vector<double> grid{0.3, 0.8, 1.6, 2.4, 3.1};
  const auto par = sweep_r({ObjectiveKind::x2_transfer, ObjectiveKind::kappa4_transfer}, grid, fd, 3);
  const auto serial = sweep_r({ObjectiveKind::x2_transfer, ObjectiveKind::kappa4_transfer}, grid, fd, 1);
  REQUIRE(par.size() == serial.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].delta_star == serial[i].delta_star);
    CHECK(par[i].objective_value == serial[i].objective_value);
  }

  const auto x2 = sweep_r({ObjectiveKind::x2_transfer}, {0.2, 0.9, 1.7, 3.0}, Objective{}, 1);
  for (const auto& rec : x2) CHECK(std::abs(rec.delta_star - kDelta2) < 1e-4);

  // Cells fail independently.
  Objective no_input;
  const auto mixed = sweep_r({ObjectiveKind::x2_transfer, ObjectiveKind::d_functional}, {1.0}, no_input, 1);
  CHECK_FALSE(mixed[0].error);
  CHECK(mixed[1].error);
  CHECK_THROWS_AS(sweep_r({}, {1.0}, base), InvalidArgument);
}

TEST_CASE("D_N optimum converges more slowly for the squeezed vacuum") {
  Objective coh;
  coh.kind = ObjectiveKind::d_functional;
  coh.r = 2.5;
  coh.input = CoherentInput({2.12928, 0.0});
  Objective sq = coh;
  sq.input = SqueezedVacuumInput(1.5);
  const auto a = minimize_delta(coh);
  const auto b = minimize_delta(sq);
  CHECK(std::abs(b.delta_star - kDelta2) > std::abs(a.delta_star - kDelta2));
}

TEST_CASE("coherent input: D_N and fidelity optima close in as r grows") {
  double previous = 1.0;
  for (double r : {0.75, 1.0, 1.25, 2.5}) {
    Objective o;
    o.input = CoherentInput({2.12928, 0.0});
    o.r = r;
    o.kind = ObjectiveKind::d_functional;
    const double d = minimize_delta(o).delta_star;
    o.kind = ObjectiveKind::one_minus_fidelity;
    const double f = minimize_delta(o).delta_star;
    const double gap = std::abs(d - f);
    CAPTURE(r);
    CHECK(gap < 5e-3);
    CHECK(gap < previous);
    if (r >= 1.25) CHECK(gap < 2e-3);
    previous = gap;
  }
}
