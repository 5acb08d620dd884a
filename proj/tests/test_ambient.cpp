#include <doctest.h>

#include <algorithm>
#include <random>

#include "seshadri/ambient.hpp"
#include "seshadri/polyhedral.hpp"

using namespace seshadri;

namespace {

DivisorClass fe(int e, std::int64_t a, std::int64_t b) { return DivisorClass(AmbientSpace::hirzebruch(e), {a, b}); }

// Hand expansion of (a1 s + b1 f).(a2 s + b2 f) with s^2 = -e, s.f = 1, f^2 = 0.
std::int64_t expand(int e, std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
  return -e * a1 * a2 + a1 * b2 + b1 * a2;
}

bool has_ray(const std::vector<Vector>& rays, std::initializer_list<int> v) {
  Vector r;
  for (int x : v) r.emplace_back(x);
  return std::find(rays.begin(), rays.end(), r) != rays.end();
}

}  // namespace

TEST_CASE("Hirzebruch intersection form") {
  for (int e = 0; e <= 3; ++e) {
    CHECK(intersect(fe(e, 1, 0), fe(e, 1, 0)) == -e);
    CHECK(intersect(fe(e, 1, 0), fe(e, 0, 1)) == 1);
    CHECK(intersect(fe(e, 0, 1), fe(e, 0, 1)) == 0);
  }
  const auto p2 = AmbientSpace::projective_plane();
  CHECK(intersect(DivisorClass(p2, {1}), DivisorClass(p2, {1})) == 1);
  CHECK(intersect(DivisorClass(p2, {2}), DivisorClass(p2, {3})) == 6);
  const auto p4 = AmbientSpace::projective_space(4);
  CHECK_THROWS_AS(intersect(DivisorClass(p4, {1}), DivisorClass(p4, {1})), DomainError);
  CHECK(degree_on_line(DivisorClass(p4, {3})) == 3);
  CHECK_THROWS_AS(intersect(fe(0, 1, 0), fe(1, 1, 0)), DomainError);
}

TEST_CASE("intersection with a symbolic curve class") {
  const std::vector<std::size_t> ab = {0, 1};
  const std::vector<std::string> names = {"a", "b"};
  // (2s + 2f).(a s + b f) on F_1 is 2b
  CHECK(intersect_form(fe(1, 2, 2), ab).to_string(names) == "2*b");
  // on F_2: (2s + 4f) -> 2b, (s + 4f) -> 2a + b
  CHECK(intersect_form(fe(2, 2, 4), ab).to_string(names) == "2*b");
  CHECK(intersect_form(fe(2, 1, 4), ab).to_string(names) == "2*a + b");
}

TEST_CASE("bilinearity and symmetry on 1000 random pairs") {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<int> coeff(-50, 50);
  std::uniform_int_distribution<int> twist(0, 5);
  for (int i = 0; i < 1000; ++i) {
    const int e = twist(rng);
    const auto x = fe(e, coeff(rng), coeff(rng));
    const auto y = fe(e, coeff(rng), coeff(rng));
    const auto z = fe(e, coeff(rng), coeff(rng));
    const std::int64_t k = coeff(rng);
    CHECK(intersect(x, y) == intersect(y, x));
    CHECK(intersect(x + y, z) == intersect(x, z) + intersect(y, z));
    CHECK(intersect(k * x, z) == k * intersect(x, z));
    CHECK(intersect(x, y) == expand(e, x[0], x[1], y[0], y[1]));
  }
}

TEST_CASE("irreducible class cones") {
  SUBCASE("F_1: rays of {a >= 1, b >= a} and the special rays") {
    const auto irr = irreducible_class_cone(AmbientSpace::hirzebruch(1));
    const auto rays = irr.main.cone.rays();
    // (a, b, u): the vertex (1,1) and the directions (1,1), (0,1)
    CHECK(rays.size() == 3);
    CHECK(has_ray(rays, {1, 1, 1}));
    CHECK(has_ray(rays, {1, 1, 0}));
    CHECK(has_ray(rays, {0, 1, 0}));
    REQUIRE(irr.special.size() == 2);
    CHECK(irr.special[0].label == "f");
    CHECK(irr.special[0].coords == std::vector<std::int64_t>{0, 1});
    CHECK(irr.special[1].label == "sigma");
    CHECK(irr.special[1].coords == std::vector<std::int64_t>{1, 0});
  }
  SUBCASE("F_0: {a >= 1, b >= 1}") {
    const auto irr = irreducible_class_cone(AmbientSpace::hirzebruch(0));
    const auto rays = irr.main.cone.rays();
    CHECK(rays.size() == 3);
    CHECK(has_ray(rays, {1, 1, 1}));
    CHECK(has_ray(rays, {1, 0, 0}));
    CHECK(has_ray(rays, {0, 1, 0}));
  }
  SUBCASE("P^2: {d >= 1}") {
    const auto irr = irreducible_class_cone(AmbientSpace::projective_plane());
    const auto rays = irr.main.cone.rays();
    CHECK(rays.size() == 2);
    CHECK(has_ray(rays, {1, 1}));
    CHECK(has_ray(rays, {1, 0}));
  }
  CHECK_THROWS_AS(irreducible_class_cone(AmbientSpace::projective_space(3)), DomainError);
}

TEST_CASE("cone rays satisfy every constraint and span the cone") {
  for (int e = 0; e <= 4; ++e) {
    const auto cone = irreducible_class_cone(AmbientSpace::hirzebruch(e)).main.cone;
    const auto rays = cone.rays();
    for (const auto& r : rays) CHECK(cone.contains(r));
    std::vector<LinearForm> gens;
    for (const auto& r : rays) gens.emplace_back(r);
    for (int a = 1; a <= 6; ++a) {
      for (int b = 0; b <= 12; ++b) {
        const Vector p{Rational(a), Rational(b), Rational(1)};
        const bool inside = b >= (e == 0 ? 1 : a * e);
        CHECK(cone.contains(p) == inside);
        if (inside) {
          // p = sum lambda_j r_j with lambda >= 0
          const auto lambda = polyhedral::farkas_multipliers(gens, LinearForm(p), cone.dimension());
          CHECK(lambda.has_value());
        }
      }
    }
  }
}

TEST_CASE("probe bounds") {
  const auto f1 = AmbientSpace::hirzebruch(1);
  const auto probes = default_probes(f1);
  REQUIRE(probes.probes.size() == 2);
  // at the fiber, f.f = 0 so the fiber pencil gives nothing; (s + 2f).f = 1
  CHECK(intersect(probes.probes[0].cls, fe(1, 0, 1)) == 0);
  CHECK(mult_bound_at(probes, fe(1, 0, 1)) == 1);
  CHECK(mult_bound_at(probes, fe(1, 1, 0)) == 1);
  CHECK(mult_bound_at(probes, fe(1, 2, 5)) == 2);

  const auto p2 = AmbientSpace::projective_plane();
  const auto lines = default_probes(p2);
  for (std::int64_t d = 1; d <= 10; ++d) CHECK(mult_bound_at(lines, DivisorClass(p2, {d})) == d);

  // on the F_1 main cone both probes apply
  const auto irr = irreducible_class_cone(f1);
  const auto bound = mult_upper_bound_form(probes, irr.main);
  REQUIRE(bound.form);
  REQUIRE(bound.probes.size() == 2);
  CHECK(bound.probes[0].applicable);
  CHECK(bound.probes[1].applicable);
  CHECK(irr.main.cone.format(*bound.form) == "min{a, a + b}");
}

TEST_CASE("nef cones and ampleness") {
  const auto f1 = nef_cone(AmbientSpace::hirzebruch(1));
  CHECK(f1.first == fe(1, 1, 1));
  CHECK(f1.second == fe(1, 0, 1));
  const auto f2 = nef_cone(AmbientSpace::hirzebruch(2));
  CHECK(f2.first == fe(2, 1, 2));
  CHECK(f2.second == fe(2, 0, 1));
  const auto f0 = nef_cone(AmbientSpace::hirzebruch(0));
  CHECK(f0.first == fe(0, 1, 0));
  CHECK(f0.second == fe(0, 0, 1));
  CHECK_FALSE(is_ample(f1, fe(1, 0, 1)));
  CHECK(is_nef(f1, fe(1, 0, 1)));
  CHECK(is_ample(f1, fe(1, 1, 2)));
}

TEST_CASE("exhaustive ampleness against the intersection criterion") {
  // On F_e, D is ample iff D.s > 0 and D.f > 0 (the curves s and f span the
  // effective cone); nef iff both are >= 0.
  for (int e = 0; e <= 2; ++e) {
    const auto nef = nef_cone(AmbientSpace::hirzebruch(e));
    for (int a = -5; a <= 5; ++a) {
      for (int b = -5; b <= 5; ++b) {
        const auto d = fe(e, a, b);
        const std::int64_t ds = intersect(d, fe(e, 1, 0));
        const std::int64_t df = intersect(d, fe(e, 0, 1));
        CAPTURE(e);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(is_ample(nef, d) == (ds > 0 && df > 0));
        CHECK(is_nef(nef, d) == (ds >= 0 && df >= 0));
      }
    }
  }
}

TEST_CASE("very ample probes must be ample") {
  const auto f1 = AmbientSpace::hirzebruch(1);
  ProbeSet bad;
  bad.probes.push_back({"f as very ample", fe(1, 0, 1), ProbeKind::very_ample});
  CHECK_THROWS_AS(validate_probes(bad, nef_cone(f1)), DomainError);
  CHECK_NOTHROW(validate_probes(default_probes(f1), nef_cone(f1)));
}
