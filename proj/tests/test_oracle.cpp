#include <doctest.h>

#include <algorithm>

#include "seshadri/oracle.hpp"

using namespace seshadri;

namespace {

const std::vector<std::string> hirzebruch_ids = {"hirzebruch-case-1", "hirzebruch-case-2", "hirzebruch-case-3",
                                                 "hirzebruch-case-4"};

// A second brute force written against the ambient and bundle layers only:
// integer classes a >= 1, b >= max(1, a e) with a + b <= n, stage minimum
// over the pointwise probe bound; the special rays use their slope range.
Rational direct_minimum(const ConeTask& task, std::int64_t n) {
  const auto& x = task.bundle.ambient();
  const int e = x.e();
  Rational best = -1;
  for (const auto& special : task.setup.special_curves) {
    const Rational r = mu_min_range(task.bundle, special).lower / special.mult;
    if (best < 0 || r < best) best = r;
  }
  for (std::int64_t a = 1; a < n; ++a) {
    for (std::int64_t b = std::max<std::int64_t>(e == 0 ? 1 : a * e, 0); a + b <= n; ++b) {
      CurveDatum c;
      c.coords = {a, b};
      const auto stages = stage_degrees(task.bundle, c);
      const Rational lower = *std::min_element(stages.begin(), stages.end());
      const auto bound = mult_bound_at(task.setup.probes, DivisorClass(x, {a, b}));
      REQUIRE(bound);
      const Rational r = lower >= 0 ? lower / *bound : lower;
      if (r < best) best = r;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("brute force agrees with certification on the Hirzebruch cases") {
  for (const auto& id : hirzebruch_ids) {
    CAPTURE(id);
    const auto s = make_builtin(id);
    const auto& task = std::get<ConeTask>(s.task);
    const auto o = brute_force_oracle(s, 60);
    const auto top = max_certifiable_level(task.bundle, task.setup);
    REQUIRE(top);
    CHECK(o.min_ratio >= *top);
    CHECK(o.min_ratio == 1);
    CHECK(o.points_checked > 0);
    CHECK(direct_minimum(task, 60) == o.min_ratio);
  }
  CHECK(brute_force_oracle(make_builtin("hirzebruch-case-1"), 60).argmin == "f");
}

TEST_CASE("brute force on the five-point cone") {
  const auto s = make_builtin("ex-3.9-E3");
  const auto o = brute_force_oracle(s, 15);
  CHECK(o.min_ratio == 1);
  CHECK(o.argmin == "conic through Z");
  const auto& task = std::get<ConeTask>(s.task);
  CHECK(o.min_ratio >= *max_certifiable_level(task.bundle, task.setup));
}

TEST_CASE("small degree bounds still find the minimum") {
  const auto o = brute_force_oracle(make_builtin("hirzebruch-case-2"), 2);
  CHECK(o.min_ratio == 1);
}

TEST_CASE("oracle CSV and errors") {
  const auto o = brute_force_oracle(make_builtin("hirzebruch-case-1"), 5);
  const auto csv = oracle_csv(o);
  CHECK(csv.rfind("scenario,max_degree,points_checked,min_ratio,argmin\nhirzebruch-case-1,5,", 0) == 0);
  CHECK(csv.substr(csv.size() - 5) == ",1,f\n");
  CHECK_THROWS_AS(brute_force_oracle(make_builtin("tangent-Pn"), 5), InputError);
  CHECK_THROWS_AS(brute_force_oracle(make_builtin("hirzebruch-case-1"), 0), InputError);
  auto s = make_builtin("hirzebruch-case-2");
  std::get<ConeTask>(s.task).setup.probes.probes.clear();
  CHECK_THROWS_AS(brute_force_oracle(s, 5), DomainError);
}
