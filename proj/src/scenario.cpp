#include "seshadri/scenario.hpp"

#include <algorithm>
#include <functional>

namespace seshadri {

std::string kind_name(const ScenarioTask& task) {
  static const char* names[] = {"cone", "not_nef", "additivity", "equivariant_lines", "small_construction",
                                "reduction"};
  return names[task.index()];
}

namespace {

// ------------------------------------------------------------ parameters

class Params {
 public:
  Params(std::string id, const std::map<std::string, std::string>& given, std::vector<std::string> accepted)
      : id_(std::move(id)), given_(given) {
    for (const auto& [name, value] : given_) {
      if (std::find(accepted.begin(), accepted.end(), name) == accepted.end()) {
        std::string list;
        for (const auto& a : accepted) list += (list.empty() ? "" : ", ") + a;
        throw InputError("scenario '" + id_ + "' has no parameter '" + name + "'" +
                         (list.empty() ? " (it takes none)" : " (accepted: " + list + ")"));
      }
    }
  }

  Rational rational(const std::string& name, const Rational& fallback) const {
    const auto it = given_.find(name);
    if (it == given_.end()) return fallback;
    try {
      return parse_rational(it->second);
    } catch (const InputError& e) {
      throw InputError("parameter " + name + " of '" + id_ + "': " + e.what());
    }
  }

  std::int64_t integer(const std::string& name, std::int64_t fallback) const {
    const Rational v = rational(name, fallback);
    if (denominator_i64(v) != 1) throw InputError("parameter " + name + " of '" + id_ + "' must be an integer");
    return numerator_i64(v);
  }

  bool has(const std::string& name) const { return given_.count(name) > 0; }

 private:
  std::string id_;
  std::map<std::string, std::string> given_;
};

CurveDatum smooth_rational_curve(std::string label, std::vector<std::int64_t> coords,
                                 std::vector<std::int64_t> marked = {}) {
  CurveDatum c;
  c.label = std::move(label);
  c.coords = std::move(coords);
  c.marked = std::move(marked);
  c.smooth = true;
  c.rational = true;
  return c;
}

// ------------------------------------------------------------- builders

struct HirzebruchCase {
  int e;
  std::vector<std::int64_t> sub;
  std::vector<std::int64_t> quot;
};

const HirzebruchCase kHirzebruchCases[] = {
    {1, {2, 2}, {1, 3}},
    {0, {2, 0}, {1, 3}},
    {1, {2, 1}, {1, 4}},
    {2, {2, 4}, {1, 4}},
};

Scenario hirzebruch_case(int k, const Params&) {
  const auto& c = kHirzebruchCases[k - 1];
  const AmbientSpace x = AmbientSpace::hirzebruch(c.e);
  BundleFlags flags;
  flags.ample = "indecomposable ample rank 2 bundle from the classification with c2 <= e + 6";
  const auto bundle = BundlePresentation::extension(DivisorClass(x, c.sub), DivisorClass(x, c.quot), flags);

  ConeTask task{bundle, default_setup(bundle), 1};
  CurveDatum fiber = smooth_rational_curve("fiber f", {0, 1});
  fiber.citation = "fiber through x; nu^*E has quotient degree (sigma + ...).f";
  task.setup.witnesses.push_back(fiber);

  Scenario s{"hirzebruch-case-" + std::to_string(k), bundle.describe() + ", c2 = " + std::to_string(chern(bundle).c2),
             task};
  s.expected.lower = 1;
  s.expected.upper = 1;
  s.expected.citation = "eps(F_e, E, x) >= 1 at every point; the fiber through x gives 1";
  return s;
}

BundlePresentation five_point_bundle(std::int64_t twist_degree) {
  const AmbientSpace p2 = AmbientSpace::projective_plane();
  auto e = BundlePresentation::ideal_extension(DivisorClass::zero(p2), DivisorClass::zero(p2),
                                               {"p1", "p2", "p3", "p4", "p5"});
  return twist(e, DivisorClass(p2, {twist_degree}));
}

CurveDatum five_point_conic() {
  CurveDatum conic = smooth_rational_curve("conic through Z", {2}, {1, 1, 1, 1, 1});
  conic.citation = "the unique conic through the five points";
  return conic;
}

Scenario five_points_e3(const Params&) {
  const auto bundle = five_point_bundle(3);
  ConeTask task{bundle, default_setup(bundle), 1};
  task.setup.extra_constraints.push_back(
      {"2*d >= m1 + m2 + m3 + m4 + m5", "Bezout with the conic through Z, for curves other than the conic"});
  task.setup.special_curves.push_back(five_point_conic());
  task.setup.witnesses.push_back(five_point_conic());
  CurveDatum line = smooth_rational_curve("line through p1 and p2", {1}, {1, 1, 0, 0, 0});
  line.citation = "one of the ten lines through two of the points";
  task.setup.witnesses.push_back(line);

  Scenario s{"ex-3.9-E3", "E(3) for 0 -> O -> E -> I_Z -> 0, Z five points, no three collinear, on P^2", task};
  s.expected.lower = 1;
  s.expected.upper = 1;
  s.expected.citation = "eps(P^2, E(3), x) >= 1 everywhere; the conic through Z contributes exactly 1";
  return s;
}

Scenario five_points_e2(const Params&) {
  NotNefTask task{five_point_bundle(2), five_point_conic()};
  Scenario s{"ex-3.9-E2-not-nef", "E(2) for 0 -> O -> E -> I_Z -> 0 restricted to the conic through Z", task};
  s.expected.quotient_degree = -1;
  s.expected.citation = "E(2)|_C has a quotient of degree -1, so E(2) is not nef";
  return s;
}

AdditivityTask additivity_task(BundlePresentation base, std::int64_t k, std::string nef_citation,
                               std::string line_citation) {
  const AmbientSpace x = base.ambient();
  AdditivityTask task{twist(base, DivisorClass(x, {k})), k};
  if (k >= task.min_k) task.facts.nef_part = std::move(nef_citation);
  task.facts.line_ample_globally_generated = std::move(line_citation);
  return task;
}

void check_twist_parameter(const std::string& id, std::int64_t k) {
  if (k < -1000 || k > 1000) throw InputError("parameter k of '" + id + "' must lie in [-1000, 1000]");
}

Scenario point_ideal_bundle(const Params& p) {
  const std::int64_t k = p.integer("k", 2);
  check_twist_parameter("ex-3.4", k);
  const AmbientSpace p2 = AmbientSpace::projective_plane();
  const auto base =
      BundlePresentation::ideal_extension(DivisorClass::zero(p2), DivisorClass::zero(p2), {"t"});
  auto task = additivity_task(base, k, "E(1) is an extension of the nef sheaves O(1) and I_t(1), hence nef",
                              "O(1) on P^2 is very ample");
  CurveDatum line = smooth_rational_curve("line through t", {1}, {1});
  line.citation = "I_t(1) restricts trivially to lines through t";
  task.witnesses.push_back(line);

  Scenario s{"ex-3.4", "E(k) for 0 -> O -> E -> I_t -> 0 on P^2", task};
  s.expected.lower = 1;
  s.expected.upper = k - 1;
  s.expected.citation = "eps(P^2, E(k), x) >= 1 for all k >= 2";
  return s;
}

Scenario abstract_p2_bundle(const std::string& id, const std::string& description, const std::string& nef_citation,
                            const std::string& line_label, const std::string& line_citation, const Params& p) {
  const std::int64_t k = p.integer("k", 2);
  check_twist_parameter(id, k);
  const auto base = BundlePresentation::abstract(AmbientSpace::projective_plane(), 2, description);
  auto task = additivity_task(base, k, nef_citation, "O(1) on P^2 is very ample");
  CurveDatum line = smooth_rational_curve(line_label, {1});
  line.degrees = std::vector<std::int64_t>{k - 1, k + 1};
  line.degrees_split = true;
  line.citation = line_citation;
  task.witnesses.push_back(line);

  Scenario s{id, "E(k) for " + description, task};
  s.expected.lower = 1;
  s.expected.upper = k - 1;
  s.expected.citation = "eps(P^2, E(k), x) >= 1 for all k >= 2";
  return s;
}

Scenario stable_kernel_bundle(const Params& p) {
  return abstract_p2_bundle("ex-3.5", "the stable bundle E with 0 -> O(-1)^2 -> O^4 -> E(1) -> 0 on P^2",
                            "E(1) is globally generated, hence nef", "special line L",
                            "lines with E(1)|_L = O + O(2)", p);
}

Scenario four_point_bundle(const Params& p) {
  return abstract_p2_bundle("ex-3.6", "the stable bundle E with 0 -> O(-2) -> O^3 -> E(1) -> 0 on P^2",
                            "E(1) is globally generated, hence nef", "line through two of the four points",
                            "E(1) sits in 0 -> O -> E(1) -> I(2) -> 0, I the ideal of four general points; "
                            "E(1)|_L = O + O(2) on a line through two of them",
                            p);
}

Scenario null_correlation(const Params& p) {
  const std::int64_t k = p.integer("k", 2);
  check_twist_parameter("ex-3.7-null-correlation", k);
  const auto base =
      BundlePresentation::abstract(AmbientSpace::projective_space(3), 2, "the null correlation bundle N on P^3");
  auto task = additivity_task(base, k, "N(1) is globally generated, hence nef", "O(1) on P^3 is very ample");
  Scenario s{"ex-3.7-null-correlation", "N(k) for the null correlation bundle on P^3", task};
  s.expected.lower = 1;
  s.expected.citation = "eps(P^3, N(k), x) >= 1 for all k >= 2";
  return s;
}

Scenario tangent_bundle(const Params& p) {
  const std::int64_t n = p.integer("n", 2);
  if (n < 2 || n > 64) throw InputError("parameter n of 'tangent-Pn' must lie in [2, 64]");
  std::vector<std::int64_t> splitting(static_cast<std::size_t>(n), 1);
  splitting.front() = 2;
  const std::size_t families = static_cast<std::size_t>(n * (n + 1) / 2);
  BundleFlags flags;
  flags.ample = "T_P^n is ample";
  flags.uniform_splitting = "T_P^n|_l = O(2) + O(1)^(n-1) on every line l";
  auto bundle = BundlePresentation::equivariant_lines(static_cast<int>(n),
                                                      std::vector<std::vector<std::int64_t>>(families, splitting), flags);
  Scenario s{"tangent-Pn", "tangent bundle of P^" + std::to_string(n) + " on its " + std::to_string(families) +
                               " invariant lines",
             EquivariantTask{bundle}};
  s.expected.lower = 1;
  s.expected.upper = 1;
  s.expected.citation = "eps(P^n, T_P^n, x) = 1";
  return s;
}

Scenario small_construction(const Params& p) {
  SmallConstructionTask task;
  task.delta = p.rational("delta", Rational(1, 7));
  if (task.delta <= 0) throw InputError("parameter delta of 'thm-4.1-small' must be positive");
  if (p.has("r")) {
    task.r = p.integer("r", 1);
    if (*task.r < 1) throw InputError("parameter r of 'thm-4.1-small' must be >= 1");
  }
  const std::int64_t r = task.r ? *task.r : small_construction_rank(task.delta);
  Scenario s{"thm-4.1-small", "E_r = p1^* V_r (x) p2^* L on C x Y, V_r stable of rank r and degree 1", task};
  s.expected.upper = Rational(1, r);
  s.expected.citation = "eps(X, E_r, x) <= mu(V_r) = 1/r < delta";
  return s;
}

Scenario reduction(const Params& p) {
  ReductionTask task;
  const std::int64_t d = p.integer("d", 3);
  task.rank = p.integer("rank", 2);
  task.rank_q1 = p.integer("rank_q1", 2);
  if (d < 1) throw InputError("parameter d of 'thm-4.2-reduction' must be >= 1 (det Q1 ample)");
  if (task.rank < 1) throw InputError("parameter rank of 'thm-4.2-reduction' must be >= 1");
  if (task.rank_q1 < 1 || task.rank_q1 > task.rank) {
    throw InputError("parameter rank_q1 of 'thm-4.2-reduction' must lie in [1, rank]");
  }
  task.det_q1 = DivisorClass(AmbientSpace::projective_plane(), {d});
  task.hypothesis = "the minimal HN quotient Q1 is semistable with vanishing discriminant, so "
                    "mu_min(nu^*E) = mu(nu^*Q1) on every curve";
  Scenario s{"thm-4.2-reduction", "eps(E) = eps(det Q1) / rank Q1 on P^2 with det Q1 = O(" + std::to_string(d) + ")",
             task};
  s.expected.lower = Rational(d, task.rank_q1);
  s.expected.upper = Rational(d, task.rank_q1);
  s.expected.floor = Rational(1, task.rank);
  s.expected.citation = "eps(X, E, x) = eps(X, det Q1, x) / rank Q1 >= 1 / rank E";
  return s;
}

struct Builder {
  RegistryEntry entry;
  std::function<Scenario(const Params&)> build;
};

const std::vector<Builder>& builders() {
  static const std::vector<Builder> list = [] {
    std::vector<Builder> b = {
        {{"ex-3.4", "E(k), 0 -> O -> E -> I_t -> 0 on P^2", "eps >= 1 for k >= 2; <= k-1 on lines through t", {"k"}},
         point_ideal_bundle},
        {{"ex-3.5", "E(k), 0 -> O(-1)^2 -> O^4 -> E(1) -> 0 on P^2", "eps >= 1 for k >= 2", {"k"}},
         stable_kernel_bundle},
        {{"ex-3.6", "E(k), 0 -> O(-2) -> O^3 -> E(1) -> 0 on P^2", "eps >= 1 for k >= 2", {"k"}},
         four_point_bundle},
        {{"ex-3.7-null-correlation", "N(k), null correlation bundle on P^3", "eps >= 1 for k >= 2", {"k"}},
         null_correlation},
        {{"ex-3.9-E2-not-nef", "E(2), E from five points in P^2", "quotient of degree -1 on the conic", {}},
         five_points_e2},
        {{"ex-3.9-E3", "E(3), E from five points in P^2", "[1, 1] at points of the conic, >= 1 everywhere", {}},
         five_points_e3},
        {{"tangent-Pn", "tangent bundle of P^n", "exactly 1", {"n"}}, tangent_bundle},
        {{"thm-4.1-small", "ample bundle with small Seshadri constant", "<= 1/r < delta (1/8 for delta = 1/7)",
          {"delta", "r"}},
         small_construction},
        {{"thm-4.2-reduction", "reduction to det Q1 on P^2", "d / rank_q1 (3/2), floor 1/rank", {"d", "rank", "rank_q1"}},
         reduction},
    };
    static const char* case_titles[] = {"F_1, 0 -> 2s+2f -> E -> s+3f -> 0", "F_0, 0 -> 2s -> E -> s+3f -> 0",
                                        "F_1, 0 -> 2s+f -> E -> s+4f -> 0", "F_2, 0 -> 2s+4f -> E -> s+4f -> 0"};
    for (int k = 1; k <= 4; ++k) {
      b.push_back({{"hirzebruch-case-" + std::to_string(k), case_titles[k - 1], "[1, 1]", {}},
                   [k](const Params& p) { return hirzebruch_case(k, p); }});
    }
    std::sort(b.begin(), b.end(), [](const Builder& l, const Builder& r) { return l.entry.id < r.entry.id; });
    return b;
  }();
  return list;
}

}  // namespace

const std::vector<RegistryEntry>& builtin_scenarios() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> out;
    for (const auto& b : builders()) out.push_back(b.entry);
    return out;
  }();
  return entries;
}

bool is_builtin(const std::string& id) {
  const auto& b = builders();
  return std::any_of(b.begin(), b.end(), [&](const Builder& x) { return x.entry.id == id; });
}

Scenario make_builtin(const std::string& id, const std::map<std::string, std::string>& params) {
  for (const auto& b : builders()) {
    if (b.entry.id != id) continue;
    Scenario s = b.build(Params(id, params, b.entry.parameters));
    s.source.builtin = id;
    s.source.params = params;
    return s;
  }
  throw InputError("unknown scenario '" + id + "'; run `seshadri list` for the built-in ids");
}

Scenario scenario_from_source(const ScenarioSource& source) {
  if (!source.builtin.empty()) return make_builtin(source.builtin, source.params);
  if (source.toml.empty()) throw InputError("scenario source has neither a builtin id nor TOML text");
  return parse_scenario_toml(source.toml, "<embedded scenario>");
}

// ------------------------------------------------------------------- runs

namespace {

void run_task(const ConeTask& task, const RunOptions& options, ScenarioResult& r) {
  check_discriminant(task.bundle);
  r.level = options.level ? *options.level : task.level;
  r.level_overridden = options.level.has_value() && *options.level != task.level;
  r.lower_report = options.lower_bound ? options.lower_bound(task, r.level)
                                       : seshadri_lower_bound(task.bundle, task.setup, r.level);
  r.certified = r.lower_report->certified;
  r.failures = r.lower_report->failures;
  if (r.certified) r.lower = r.level;
  for (const auto& w : task.setup.witnesses) {
    r.witnesses.push_back(seshadri_upper_witness(task.bundle, w));
    if (!r.upper || r.witnesses.back().contribution < *r.upper) r.upper = r.witnesses.back().contribution;
  }
}

void run_task(const NotNefTask& task, const RunOptions&, ScenarioResult& r) {
  r.non_nef_stages = stage_degrees(task.bundle, task.curve);
  r.quotient_degree = detect_non_nef_witness(task.bundle, task.curve);
  r.certified = *r.quotient_degree < 0;
  if (!r.certified) {
    r.failures.push_back("all stage degrees on " + task.curve.label + " are >= 0; no negative quotient found");
  }
}

void run_task(const AdditivityTask& task, const RunOptions&, ScenarioResult& r) {
  if (task.k < task.min_k) {
    r.failures.push_back("E(" + std::to_string(task.k - 1) + ") = E(k) (x) O(-1) is not declared nef (needs k >= " +
                         std::to_string(task.min_k) + ")");
  } else {
    r.lower = additivity_lower_bound(task.eps_nef_part, task.eps_line, task.facts);
    r.certified = true;
  }
  for (const auto& w : task.witnesses) {
    r.witnesses.push_back(seshadri_upper_witness(task.bundle, w));
    if (!r.upper || r.witnesses.back().contribution < *r.upper) r.upper = r.witnesses.back().contribution;
  }
}

void run_task(const EquivariantTask& task, const RunOptions&, ScenarioResult& r) {
  r.equivariant = equivariant_line_bound(task.bundle);
  r.lower = r.equivariant->lower;
  r.certified = true;
  if (r.equivariant->exact) {
    // with the same splitting on every line, any line through x realizes it
    r.upper = r.equivariant->lower;
  } else {
    r.notes.push_back("upper bound " + to_string(r.equivariant->lower) + " holds only at points of line family " +
                      std::to_string(r.equivariant->argmin_family));
  }
}

void run_task(const SmallConstructionTask& task, const RunOptions&, ScenarioResult& r) {
  const std::int64_t rank = task.r ? *task.r : small_construction_rank(task.delta);
  r.small = small_seshadri_construction(rank, task.delta);
  r.upper = r.small->upper;
  r.certified = r.small->below_delta;
  if (!r.certified) {
    r.failures.push_back("1/r = " + to_string(r.small->upper) + " is not below delta = " + to_string(task.delta));
  }
}

void run_task(const ReductionTask& task, const RunOptions&, ScenarioResult& r) {
  r.reduction = semistable_reduction(task.rank, task.det_q1, task.rank_q1, projective_plane_line_oracle,
                                     task.hypothesis);
  r.lower = r.reduction->value;
  r.upper = r.reduction->value;
  r.certified = true;
}

}  // namespace

std::vector<std::string> compare_expected(const ScenarioResult& r) {
  std::vector<std::string> out;
  const Expected& e = r.scenario.expected;
  auto show = [](const std::optional<Rational>& v) { return v ? to_string(*v) : std::string("none"); };
  if (e.lower) {
    if (r.level_overridden) {
      // the expected lower bound refers to the scenario's own level
    } else if (!r.lower || *r.lower != *e.lower) {
      out.push_back("lower bound " + show(r.lower) + ", expected " + to_string(*e.lower));
    }
  }
  if (e.upper && (!r.upper || *r.upper != *e.upper)) {
    out.push_back("upper bound " + show(r.upper) + ", expected " + to_string(*e.upper));
  }
  if (e.quotient_degree && r.quotient_degree != e.quotient_degree) {
    out.push_back("quotient degree " + (r.quotient_degree ? std::to_string(*r.quotient_degree) : "none") +
                  ", expected " + std::to_string(*e.quotient_degree));
  }
  if (e.floor && (!r.reduction || r.reduction->floor != *e.floor)) {
    out.push_back("floor " + (r.reduction ? to_string(r.reduction->floor) : "none") + ", expected " +
                  to_string(*e.floor));
  }
  return out;
}

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  ScenarioResult r{scenario};
  r.level = options.level ? *options.level : Rational(1);
  r.level_option = options.level;
  if (options.level && !std::holds_alternative<ConeTask>(scenario.task)) {
    r.notes.push_back("--level only applies to cone certification; ignored");
  }
  std::visit([&](const auto& task) { run_task(task, options, r); }, scenario.task);
  if (r.lower && r.upper && *r.lower > *r.upper) {
    r.certified = false;
    r.failures.push_back("certified lower bound " + to_string(*r.lower) + " exceeds the witness upper bound " +
                         to_string(*r.upper) + "; the scenario data are inconsistent");
  }
  if (r.level_overridden) r.notes.push_back("level overridden; the expected lower bound is not compared");
  r.mismatches = compare_expected(r);
  return r;
}

}  // namespace seshadri
