#include <doctest.h>

#include <random>

#include "seshadri/bundle.hpp"

using namespace seshadri;

namespace {

const AmbientSpace p2 = AmbientSpace::projective_plane();

DivisorClass fe(int e, std::int64_t a, std::int64_t b) { return DivisorClass(AmbientSpace::hirzebruch(e), {a, b}); }
DivisorClass h(std::int64_t d) { return DivisorClass(p2, {d}); }

// (a, b, u) on F_e, or (d, u, m1..mk) on P^2.
CurveClassForm symbolic_curve(const AmbientSpace& x, std::size_t marked = 0) {
  CurveClassForm c;
  c.ambient = x;
  c.cone = ClassCone(x.class_coordinate_names(), true);
  for (const auto& name : x.class_coordinate_names()) c.class_vars.push_back(c.cone.index_of(name));
  for (std::size_t i = 1; i <= marked; ++i) c.marked_vars.push_back(c.cone.add_variable("m" + std::to_string(i)));
  return c;
}

std::vector<std::string> stage_strings(const RestrictionModel& m, const ClassCone& cone) {
  std::vector<std::string> out;
  for (const auto& s : m.stages) out.push_back(cone.format(s));
  return out;
}

const std::vector<std::string> five = {"p1", "p2", "p3", "p4", "p5"};

BundlePresentation five_point_bundle() { return BundlePresentation::ideal_extension(h(0), h(0), five); }

CurveDatum conic() {
  CurveDatum c;
  c.label = "conic through Z";
  c.coords = {2};
  c.marked = {1, 1, 1, 1, 1};
  return c;
}

}  // namespace

TEST_CASE("restriction models reproduce the stage degrees") {
  SUBCASE("Hirzebruch Case 1") {
    const auto curve = symbolic_curve(AmbientSpace::hirzebruch(1));
    const auto e = BundlePresentation::extension(fe(1, 2, 2), fe(1, 1, 3));
    const auto m = restriction_model(e, curve);
    CHECK(m.kind == RestrictionModel::Kind::extension);
    CHECK(stage_strings(m, curve.cone) == std::vector<std::string>{"2*b", "2*a + b"});
  }
  SUBCASE("five points, twisted by 2") {
    const auto curve = symbolic_curve(p2, 5);
    const auto m = restriction_model(twist(five_point_bundle(), h(2)), curve);
    CHECK(stage_strings(m, curve.cone) ==
          std::vector<std::string>{"2*d + m1 + m2 + m3 + m4 + m5", "2*d - m1 - m2 - m3 - m4 - m5"});
  }
  SUBCASE("split on a line") {
    const auto e = BundlePresentation::split({h(1), h(1)});
    CurveDatum line;
    line.coords = {1};
    RestrictionModel::Kind kind{};
    CHECK(stage_degrees(e, line, &kind) == std::vector<std::int64_t>{1, 1});
    CHECK(kind == RestrictionModel::Kind::split);
    CHECK(splitting_on_line(e) == std::vector<std::int64_t>{1, 1});
  }
  SUBCASE("marked variables must match the marked points") {
    CHECK_THROWS_AS(restriction_model(five_point_bundle(), symbolic_curve(p2, 3)), DomainError);
  }
}

TEST_CASE("twists") {
  const auto e = five_point_bundle();
  CHECK(stage_degrees(twist(e, h(2)), conic()) == std::vector<std::int64_t>{9, -1});
  CHECK(twist(e, h(0)) == e);
  const auto twice = twist(twist(e, h(1)), h(1));
  const auto once = twist(e, h(2));
  CHECK(twice == once);
  CHECK(twice.rank() == e.rank());
  CHECK(twist(BundlePresentation::split({h(1), h(2), h(3)}), h(4)).rank() == 3);
}

TEST_CASE("Chern data") {
  CHECK(chern(BundlePresentation::extension(fe(1, 2, 2), fe(1, 1, 3))).c2 == 6);
  CHECK(chern(BundlePresentation::extension(fe(2, 2, 4), fe(2, 1, 4))).c2 == 8);
  CHECK(chern(BundlePresentation::split({fe(1, 3, 5), fe(1, 0, 0)})).c2 == 0);
  // the ideal sheaf adds the length of Z
  CHECK(chern(five_point_bundle()).c2 == 5);
  CHECK(chern(five_point_bundle()).c1 == h(0));
}

TEST_CASE("non-nef detection") {
  const auto e = five_point_bundle();
  CHECK(detect_non_nef_witness(twist(e, h(2)), conic()) == -1);
  CHECK(stage_degrees(twist(e, h(3)), conic()) == std::vector<std::int64_t>{11, 1});
  CHECK(detect_non_nef_witness(twist(e, h(3)), conic()) == 1);

  // a split bundle of ample classes is positive on every curve class
  const auto nef = nef_cone(AmbientSpace::hirzebruch(1));
  const auto split = BundlePresentation::split({fe(1, 1, 2), fe(1, 2, 3)});
  for (const auto& c : split.as<SplitShape>()->classes) REQUIRE(is_ample(nef, c));
  for (std::int64_t a = 0; a <= 5; ++a) {
    for (std::int64_t b = a; b <= 8; ++b) {
      if (a == 0 && b == 0) continue;
      CurveDatum curve;
      curve.coords = {a, b};
      CHECK(detect_non_nef_witness(split, curve) > 0);
    }
  }
  CurveDatum sigma;
  sigma.coords = {1, 0};
  CHECK(detect_non_nef_witness(split, sigma) > 0);
}

TEST_CASE("degree exactness, twist naturality and c1 additivity on random presentations") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> shape(0, 2);
  std::uniform_int_distribution<int> twist_e(0, 3);
  std::uniform_int_distribution<int> rank(1, 4);
  for (int i = 0; i < 200; ++i) {
    const int kind = shape(rng);
    const bool plane = kind == 2;
    const AmbientSpace x = plane ? p2 : AmbientSpace::hirzebruch(twist_e(rng));
    const auto cls = [&] {
      return plane ? h(coeff(rng)) : DivisorClass(x, {coeff(rng), coeff(rng)});
    };
    BundlePresentation e = [&] {
      if (kind == 0) {
        std::vector<DivisorClass> cs;
        const int r = rank(rng);
        for (int j = 0; j < r; ++j) cs.push_back(cls());
        return BundlePresentation::split(cs);
      }
      if (kind == 1) return BundlePresentation::extension(cls(), cls());
      return BundlePresentation::ideal_extension(cls(), cls(), {"p", "q"});
    }();
    const auto curve = symbolic_curve(x, plane ? 2 : 0);
    const auto model = restriction_model(e, curve);
    const ChernData c = chern(e);
    CHECK(model.total_degree() == intersect_form(c.c1, curve.class_vars));

    const DivisorClass l = cls();
    const auto t = twist(e, l);
    const auto shifted = restriction_model(t, curve);
    const LinearForm lc = intersect_form(l, curve.class_vars);
    REQUIRE(shifted.stages.size() == model.stages.size());
    for (std::size_t s = 0; s < model.stages.size(); ++s) CHECK(shifted.stages[s] == model.stages[s] + lc);

    const ChernData ct = chern(t);
    CHECK(ct.c1 == c.c1 + e.rank() * l);
    if (e.rank() == 2) CHECK(ct.c2 == c.c2 + intersect(c.c1, l) + intersect(l, l));
  }
}

TEST_CASE("declared vanishing discriminant is checked") {
  BundleFlags flags;
  flags.semistable_vanishing_discriminant = "declared for the test";
  // O(1) + O(1): c1 = 2H, c2 = 1, 4*1 - 4 = 0
  CHECK_NOTHROW(check_discriminant(BundlePresentation::split({h(1), h(1)}, flags)));
  CHECK_THROWS_AS(check_discriminant(BundlePresentation::split({h(1), h(2)}, flags)), DomainError);
}
