#include <doctest.h>

#include <algorithm>

#include "seshadri/certify.hpp"
#include "seshadri/polyhedral.hpp"
#include "seshadri/scenario.hpp"

using namespace seshadri;

namespace {

const AmbientSpace p2 = AmbientSpace::projective_plane();

DivisorClass fe(int e, std::int64_t a, std::int64_t b) { return DivisorClass(AmbientSpace::hirzebruch(e), {a, b}); }

ConeTask cone_task(const std::string& id) { return std::get<ConeTask>(make_builtin(id).task); }

const std::vector<std::string> hirzebruch_ids = {"hirzebruch-case-1", "hirzebruch-case-2", "hirzebruch-case-3",
                                                 "hirzebruch-case-4"};

// Each multiplier vector recombines to its target, computed independently
// of the prover.
void check_recombination(const ConeInequalityCertificate& cert, const ClassCone& cone) {
  for (const auto& sub : cert.subcones) {
    const auto rows = subcone_constraints(cone, sub.conditions);
    if (sub.status == SubconeStatus::counterexample) {
      REQUIRE(sub.counterexample);
      CHECK((*sub.counterexample)[*cone.unit()] == 1);
      CHECK(sub.target.evaluate(*sub.counterexample) < 0);
      for (const auto& r : rows) CHECK(r.evaluate(*sub.counterexample) >= 0);
      continue;
    }
    REQUIRE(sub.multipliers.size() == rows.size());
    LinearForm sum;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(sub.multipliers[i] >= 0);
      sum += rows[i] * sub.multipliers[i];
    }
    if (sub.status == SubconeStatus::nonneg) {
      CHECK(sum == sub.target);
    } else {
      CHECK(sum == LinearForm::variable(*cone.unit(), Rational(-1)));
    }
  }
}

CurveDatum curve(std::string label, std::vector<std::int64_t> coords, std::vector<std::int64_t> marked = {}) {
  CurveDatum c;
  c.label = std::move(label);
  c.coords = std::move(coords);
  c.marked = std::move(marked);
  return c;
}

}  // namespace

TEST_CASE("cone inequalities on the F_1 main cone") {
  const auto cone = irreducible_class_cone(AmbientSpace::hirzebruch(1)).main.cone;
  const auto a = LinearForm::variable(cone.index_of("a"));
  const auto b = LinearForm::variable(cone.index_of("b"));

  SUBCASE("min{2b, 2a + b} >= a") {
    const PlForm form = PlForm::min({PlForm::linear(b * Rational(2) - a), PlForm::linear(a + b)});
    const auto cert = prove_nonneg_on_cone(form, cone);
    CHECK(cert.holds());
    CHECK(cert.subcones.size() == 2);
    check_recombination(cert, cone);
    // independent oracle
    for (int x = 1; x <= 50; ++x) {
      for (int y = x; y <= 50; ++y) CHECK(std::min(2 * y, 2 * x + y) >= x);
    }
  }
  SUBCASE("a - b fails, with a point of the cone") {
    const auto cert = prove_nonneg_on_cone(PlForm::linear(a - b), cone);
    CHECK_FALSE(cert.holds());
    const auto* bad = cert.first_failure();
    REQUIRE(bad);
    REQUIRE(bad->counterexample);
    CHECK(cone.contains(*bad->counterexample));
    CHECK((a - b).evaluate(*bad->counterexample) < 0);
    check_recombination(cert, cone);
  }
}

TEST_CASE("five-point cone: multipliers sit on 2d >= sum m_i and m_x <= d") {
  ClassCone cone({"d"}, true);
  const auto d = LinearForm::variable(cone.index_of("d"));
  const auto u = LinearForm::variable(*cone.unit());
  cone.add_constraint(d - u, "d >= 1");
  LinearForm sum;
  for (int i = 1; i <= 5; ++i) {
    const auto m = LinearForm::variable(cone.add_variable("m" + std::to_string(i)));
    cone.add_constraint(m, "m" + std::to_string(i) + " >= 0");
    sum += m;
  }
  const auto mx = LinearForm::variable(cone.add_variable("m_x"));
  cone.add_constraint(d * Rational(2) - sum, "2*d >= m1 + m2 + m3 + m4 + m5");
  cone.add_constraint(d - mx, "m_x <= d");

  const auto target = d * Rational(2) - sum + d - mx;
  const auto cert = prove_nonneg_on_cone(PlForm::linear(target), cone);
  REQUIRE(cert.holds());
  REQUIRE(cert.subcones.size() == 1);
  const auto& lambda = cert.subcones[0].multipliers;
  REQUIRE(lambda.size() == cone.constraints().size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const auto& label = cone.constraints()[i].label;
    const bool used = label == "2*d >= m1 + m2 + m3 + m4 + m5" || label == "m_x <= d";
    CAPTURE(label);
    CHECK(lambda[i] == (used ? 1 : 0));
  }
  check_recombination(cert, cone);
}

TEST_CASE("lower-bound certification") {
  for (const auto& id : hirzebruch_ids) {
    CAPTURE(id);
    const auto task = cone_task(id);
    const auto report = seshadri_lower_bound(task.bundle, task.setup, 1);
    CHECK(report.certified);
    CHECK(report.failures.empty());
    check_recombination(report.cone, report.model.curve.cone);
  }
  SUBCASE("Case 1 at 3/2 fails at the fiber") {
    const auto task = cone_task("hirzebruch-case-1");
    const auto report = seshadri_lower_bound(task.bundle, task.setup, Rational(3, 2));
    CHECK_FALSE(report.certified);
    REQUIRE_FALSE(report.failures.empty());
    CHECK(report.failures.front().rfind("ray f:", 0) == 0);
    const auto f = std::find_if(report.special.begin(), report.special.end(),
                                [](const SpecialCurveReport& s) { return s.curve.label == "f"; });
    REQUIRE(f != report.special.end());
    CHECK(f->slope.stages == std::vector<std::int64_t>{2, 1});
    CHECK_FALSE(f->passes);
  }
  SUBCASE("five points, twisted by 3") {
    const auto task = cone_task("ex-3.9-E3");
    const auto report = seshadri_lower_bound(task.bundle, task.setup, 1);
    CHECK(report.certified);
    check_recombination(report.cone, report.model.curve.cone);
  }
}

TEST_CASE("no applicable probe fails safe") {
  auto task = cone_task("hirzebruch-case-2");
  task.setup.probes.probes.clear();
  const auto model = build_cone_model(task.bundle, task.setup);
  CHECK_FALSE(model.mult_bounded);
  const auto report = seshadri_lower_bound(task.bundle, task.setup, Rational(1, 1000));
  CHECK_FALSE(report.certified);
}

TEST_CASE("monotonicity in the level") {
  for (const auto& id : {"hirzebruch-case-1", "hirzebruch-case-2", "hirzebruch-case-3", "hirzebruch-case-4",
                         "ex-3.9-E3"}) {
    CAPTURE(id);
    const auto task = cone_task(id);
    const auto top = max_certifiable_level(task.bundle, task.setup);
    REQUIRE(top);
    CHECK(*top == 1);
    for (const Rational t : {Rational(0), Rational(1, 3), Rational(2, 3), Rational(99, 100), Rational(1)}) {
      CHECK(seshadri_lower_bound(task.bundle, task.setup, t).certified);
    }
    for (const Rational t : {Rational(101, 100), Rational(3, 2), Rational(4)}) {
      CHECK_FALSE(seshadri_lower_bound(task.bundle, task.setup, t).certified);
    }
  }
}

TEST_CASE("twisting by fibers never lowers the certifiable level") {
  std::vector<BundlePresentation> corpus;
  for (const auto& id : hirzebruch_ids) corpus.push_back(cone_task(id).bundle);
  BundleFlags ample;
  ample.ample = "sum of ample classes";
  corpus.push_back(BundlePresentation::split({fe(1, 1, 2), fe(1, 1, 3)}, ample));
  corpus.push_back(BundlePresentation::split({fe(0, 1, 1), fe(0, 2, 1)}, ample));
  corpus.push_back(BundlePresentation::split({fe(2, 1, 3), fe(2, 2, 5)}, ample));
  for (const auto& e : corpus) {
    CAPTURE(e.describe());
    const auto setup = default_setup(e);
    const auto base = max_certifiable_level(e, setup);
    REQUIRE(base);
    for (std::int64_t k = 1; k <= 3; ++k) {
      const auto t = twist(e, DivisorClass(e.ambient(), {0, k}));
      const auto shifted = max_certifiable_level(t, default_setup(t));
      REQUIRE(shifted);
      CHECK(*shifted >= *base);
    }
  }
}

TEST_CASE("applicable probes bound the multiplicity by at least 1 at integer classes") {
  for (int e = 0; e <= 3; ++e) {
    const auto x = AmbientSpace::hirzebruch(e);
    const auto probes = default_probes(x);
    const auto irr = irreducible_class_cone(x);
    const auto bound = mult_upper_bound_form(probes, irr.main);
    REQUIRE(bound.form);
    for (std::int64_t a = 1; a <= 10; ++a) {
      for (std::int64_t b = (e == 0 ? 1 : a * e); b <= 30; ++b) {
        const Vector point{Rational(a), Rational(b), Rational(1)};
        CHECK(bound.form->evaluate(point) >= 1);
        CHECK(mult_bound_at(probes, DivisorClass(x, {a, b})).value_or(0) >= 1);
      }
    }
  }
}

TEST_CASE("upper witnesses") {
  const auto e3 = cone_task("ex-3.9-E3").bundle;
  const auto conic = seshadri_upper_witness(e3, curve("conic", {2}, {1, 1, 1, 1, 1}));
  CHECK(conic.contribution == 1);
  CHECK(conic.slope.stages == std::vector<std::int64_t>{11, 1});
  const auto line = seshadri_upper_witness(e3, curve("line through p1, p2", {1}, {1, 1, 0, 0, 0}));
  CHECK(line.slope.stages == std::vector<std::int64_t>{5, 1});
  CHECK(line.contribution == 1);

  const auto case1 = cone_task("hirzebruch-case-1").bundle;
  auto fiber = curve("f", {0, 1});
  const auto f = seshadri_upper_witness(case1, fiber);
  CHECK(f.contribution == 1);
  CHECK(f.exact);

  fiber.mult = 0;
  CHECK_THROWS_AS(seshadri_upper_witness(case1, fiber), DomainError);
}

TEST_CASE("additivity") {
  const AdditivityFacts facts{"E(1) nef", "O(1) ample and globally generated"};
  CHECK(additivity_lower_bound(0, 1, facts) == 1);
  CHECK(additivity_lower_bound(1, 1, facts) == 2);
  CHECK_THROWS_AS(additivity_lower_bound(0, 1, AdditivityFacts{std::nullopt, "x"}), DomainError);
  CHECK_THROWS_AS(additivity_lower_bound(0, 1, AdditivityFacts{"x", std::nullopt}), DomainError);
  CHECK_THROWS_AS(additivity_lower_bound(-1, 1, facts), DomainError);
}

TEST_CASE("equivariant line bounds") {
  BundleFlags uniform;
  uniform.uniform_splitting = "same splitting on every line";
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::int64_t> type(n, 1);
    type[0] = 2;
    const auto b = equivariant_line_bound(BundlePresentation::equivariant_lines(n, {type, type}, uniform));
    CHECK(b.lower == 1);
    CHECK(b.exact);
  }
  const auto mixed = equivariant_line_bound(BundlePresentation::equivariant_lines(3, {{1, 1}, {2, 1}}));
  CHECK(mixed.lower == 1);
  CHECK_FALSE(mixed.exact);
  CHECK(equivariant_line_bound(BundlePresentation::equivariant_lines(3, {{3}, {2}})).lower == 2);
  CHECK(equivariant_line_bound(BundlePresentation::equivariant_lines(3, {{3}, {2}})).argmin_family == 1);
  CHECK_THROWS_AS(equivariant_line_bound(BundlePresentation::equivariant_lines(3, {{1, 0}})), DomainError);
  CHECK_THROWS_AS(equivariant_line_bound(BundlePresentation::equivariant_lines(3, {{2, 1}, {3, 1}}, uniform)),
                  DomainError);
}

TEST_CASE("small Seshadri constants") {
  const auto a = small_seshadri_construction(3, Rational(1, 2));
  CHECK(a.upper == Rational(1, 3));
  CHECK(a.below_delta);
  const auto b = small_seshadri_construction(1, 2);
  CHECK(b.upper == 1);
  CHECK(b.below_delta);
  CHECK_FALSE(small_seshadri_construction(2, Rational(1, 2)).below_delta);
  // oracle: the smallest r with 1/r < delta, by search
  for (const Rational delta : {Rational(1, 10), Rational(1, 2), Rational(1, 1000), Rational(2, 7), Rational(3)}) {
    std::int64_t r = 1;
    while (Rational(1, r) >= delta) ++r;
    CHECK(small_construction_rank(delta) == r);
    CHECK(small_seshadri_construction(r, delta).below_delta);
  }
  CHECK(small_construction_rank(Rational(1, 10)) == 11);
  CHECK_THROWS_AS(small_seshadri_construction(0, 1), DomainError);
  CHECK_THROWS_AS(small_seshadri_construction(1, 0), DomainError);
}

TEST_CASE("reduction to a line bundle") {
  const std::string hypothesis = "semistable with vanishing discriminant";
  const LineBundleOracle one = [](const DivisorClass&) { return Rational(1); };
  for (std::int64_t r = 1; r <= 5; ++r) {
    const auto res = semistable_reduction(r, DivisorClass(p2, {1}), r, one, hypothesis);
    CHECK(res.value == Rational(1, r));
    CHECK(res.floor == Rational(1, r));
    CHECK(res.floor_applies);
  }
  const LineBundleOracle seven = [](const DivisorClass&) { return Rational(7, 2); };
  CHECK(semistable_reduction(3, DivisorClass(p2, {2}), 1, seven, hypothesis).value == Rational(7, 2));

  // eps(O(d), x) on P^2 by brute force: min over curves of degree d' <= 20
  // with multiplicity m <= d' of d d' / m; lines through x give d
  for (std::int64_t d = 1; d <= 6; ++d) {
    Rational best = -1;
    for (std::int64_t dd = 1; dd <= 20; ++dd) {
      for (std::int64_t m = 1; m <= dd; ++m) {
        const Rational ratio(d * dd, m);
        if (best < 0 || ratio < best) best = ratio;
      }
    }
    CHECK(projective_plane_line_oracle(DivisorClass(p2, {d})) == best);
  }
  const auto three = semistable_reduction(2, DivisorClass(p2, {3}), 2, projective_plane_line_oracle, hypothesis);
  CHECK(three.value == Rational(3, 2));
  CHECK(three.floor == Rational(1, 2));
  CHECK(three.floor_applies);
  CHECK_THROWS_AS(semistable_reduction(2, DivisorClass(p2, {3}), 2, projective_plane_line_oracle, std::nullopt),
                  DomainError);
  CHECK_THROWS_AS(semistable_reduction(2, DivisorClass(p2, {3}), 3, projective_plane_line_oracle, hypothesis),
                  DomainError);
  CHECK_THROWS_AS(projective_plane_line_oracle(DivisorClass(p2, {0})), DomainError);
}
