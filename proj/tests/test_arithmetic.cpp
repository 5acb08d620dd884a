#include <doctest.h>

#include <random>

#include "seshadri/linear_form.hpp"
#include "seshadri/piecewise.hpp"
#include "seshadri/polyhedral.hpp"
#include "seshadri/rational.hpp"

using namespace seshadri;

namespace {

std::vector<std::string> names(std::initializer_list<const char*> list) { return {list.begin(), list.end()}; }

LinearForm form(std::initializer_list<int> coeffs) {
  Vector v;
  for (int c : coeffs) v.emplace_back(c);
  return LinearForm(v);
}

}  // namespace

TEST_CASE("rationals parse exactly and reject decimals") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("0.5"), InputError);
  CHECK_THROWS_AS(parse_rational("1e3"), InputError);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(-2)) == "-2");
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(floor(Rational(7, 2)) == 3);
}

TEST_CASE("linear forms: arithmetic, zero padding and printing") {
  const auto n = names({"a", "b", "u"});
  LinearForm f = form({2, 1});
  LinearForm g = form({0, 1, -1});
  CHECK((f - g) == form({2, 0, 1}));
  CHECK(form({1, 0, 0}) == form({1}));
  CHECK((f * Rational(1, 2)).to_string(n) == "a + 1/2*b");
  CHECK(g.to_string(n, 2) == "b - 1");
  CHECK(LinearForm().to_string(n) == "0");
  const Vector p{Rational(1), Rational(3), Rational(1)};
  CHECK(f.evaluate(p) == 5);
}

TEST_CASE("linear forms parse over named variables") {
  const auto n = names({"d", "u", "m1", "m2"});
  CHECK(parse_linear_form("2*d - m1 - m2", n, 1) == form({2, 0, -1, -1}));
  CHECK(parse_linear_form("3 + d", n, 1) == form({1, 3}));
  CHECK(parse_linear_form("1/2*d", n, 1) == LinearForm(Vector{Rational(1, 2)}));
  CHECK_THROWS_AS(parse_linear_form("d + z", n, 1), InputError);
  CHECK_THROWS_AS(parse_linear_form("d + 1", n, std::nullopt), InputError);
}

TEST_CASE("extremal rays of small cones") {
  // {a >= u, b >= a, u >= 0} in (a, b, u): rays (0,1,0), (1,1,1) (the vertex
  // lifted) and (1,1,0)
  std::vector<LinearForm> rows = {form({1, 0, -1}), form({-1, 1, 0}), form({0, 0, 1})};
  const auto rays = polyhedral::extremal_rays(rows, 3);
  REQUIRE(rays.size() == 3);
  for (const auto& r : rays) {
    for (const auto& row : rows) CHECK(row.evaluate(r) >= 0);
  }
  CHECK(std::find(rays.begin(), rays.end(), Vector{0, 1, 0}) != rays.end());
  CHECK(std::find(rays.begin(), rays.end(), Vector{1, 1, 1}) != rays.end());
  CHECK(std::find(rays.begin(), rays.end(), Vector{1, 1, 0}) != rays.end());

  // a non-pointed cone is rejected
  std::vector<LinearForm> half = {form({1, 0})};
  CHECK_THROWS_AS(polyhedral::extremal_rays(half, 2), DomainError);
}

TEST_CASE("Farkas multipliers have minimal support and recombine exactly") {
  std::vector<LinearForm> rows = {form({1, 0, -1}), form({-1, 1, 0}), form({0, 0, 1})};
  // b - u = (b - a) + (a - u)
  const auto lambda = polyhedral::farkas_multipliers(rows, form({0, 1, -1}), 3);
  REQUIRE(lambda);
  CHECK(*lambda == Vector{1, 1, 0});
  // a - b is not a nonnegative combination
  CHECK_FALSE(polyhedral::farkas_multipliers(rows, form({1, -1, 0}), 3));
}

TEST_CASE("primitive vectors and rank") {
  CHECK(polyhedral::primitive(Vector{Rational(2, 3), Rational(4, 3)}) == Vector{1, 2});
  CHECK(polyhedral::primitive(Vector{Rational(-3), Rational(6)}) == Vector{-1, 2});
  std::vector<Vector> rows = {{1, 2, 3}, {2, 4, 6}, {0, 1, 0}};
  CHECK(polyhedral::rank(rows, 3) == 2);
}

TEST_CASE("piecewise forms resolve into covering branches") {
  const auto n = names({"a", "b"});
  const PlForm m = PlForm::min({PlForm::linear(form({0, 2})), PlForm::linear(form({2, 1}))});
  CHECK(m.to_string(n) == "min{2*b, 2*a + b}");
  const auto branches = m.resolve(n);
  REQUIRE(branches.size() == 2);
  // branch i: child i is the minimum
  CHECK(branches[0].form == form({0, 2}));
  CHECK(branches[0].conditions.size() == 1);
  CHECK(branches[0].conditions[0].form == form({2, -1}));
  CHECK(branches[1].form == form({2, 1}));
  CHECK(branches[1].conditions[0].form == form({-2, 1}));

  // every point lies in some branch and the branch form equals the min there
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-20, 20);
  for (int i = 0; i < 200; ++i) {
    const Vector p{Rational(dist(rng)), Rational(dist(rng))};
    bool found = false;
    for (const auto& br : branches) {
      const bool inside = std::all_of(br.conditions.begin(), br.conditions.end(),
                                      [&](const BranchCondition& c) { return c.form.evaluate(p) >= 0; });
      if (inside) {
        found = true;
        CHECK(br.form.evaluate(p) == m.evaluate(p));
      }
    }
    CHECK(found);
  }
}

TEST_CASE("nested min and max resolve innermost first") {
  const auto n = names({"x", "y", "z"});
  const PlForm inner = PlForm::max({PlForm::linear(form({1})), PlForm::linear(form({0, 1}))});
  const PlForm outer = PlForm::min({inner, PlForm::linear(form({0, 0, 1}))});
  const auto branches = outer.resolve(n);
  CHECK(branches.size() == 4);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int i = 0; i < 300; ++i) {
    const Vector p{Rational(dist(rng)), Rational(dist(rng)), Rational(dist(rng))};
    int hits = 0;
    for (const auto& br : branches) {
      const bool inside = std::all_of(br.conditions.begin(), br.conditions.end(),
                                      [&](const BranchCondition& c) { return c.form.evaluate(p) >= 0; });
      if (inside) {
        ++hits;
        CHECK(br.form.evaluate(p) == outer.evaluate(p));
      }
    }
    CHECK(hits >= 1);
  }
  // same input, same branch order
  const auto again = outer.resolve(n);
  for (std::size_t i = 0; i < branches.size(); ++i) CHECK(branches[i].choice == again[i].choice);
}
