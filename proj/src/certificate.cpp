#include "seshadri/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "seshadri/polyhedral.hpp"

namespace seshadri {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "seshadri-certificate";
constexpr const char* kSetFormat = "seshadri-certificate-set";
constexpr int kVersion = 1;

// ------------------------------------------------------------------ writing

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();  // beyond int64: decimal string
}

json rat(const Rational& v) {
  json j = json::object();
  j["num"] = integer_json(boost::multiprecision::numerator(v));
  j["den"] = integer_json(boost::multiprecision::denominator(v));
  return j;
}

json opt_rat(const std::optional<Rational>& v) { return v ? rat(*v) : json(nullptr); }

json vec(const Vector& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(rat(x));
  return j;
}

json dense(const LinearForm& f, std::size_t dim) {
  json j = json::array();
  for (std::size_t i = 0; i < dim; ++i) j.push_back(rat(f[i]));
  return j;
}

json opt_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json curve_json(const CurveDatum& c) {
  json j = json::object();
  j["label"] = c.label;
  j["class"] = c.coords;
  j["marked"] = c.marked;
  j["mult"] = c.mult;
  j["smooth"] = c.smooth;
  j["rational"] = c.rational;
  j["degrees"] = c.degrees ? json(*c.degrees) : json(nullptr);
  j["degrees_split"] = c.degrees_split;
  j["citation"] = c.citation;
  return j;
}

json slope_json(const SlopeRange& s) {
  json j = json::object();
  j["stages"] = s.stages;
  j["lower"] = rat(s.lower);
  j["lower_rule"] = to_string(s.lower_rule);
  j["upper"] = rat(s.upper);
  j["exact"] = s.exact();
  return j;
}

json witness_json(const WitnessReport& w) {
  json j = json::object();
  j["curve"] = curve_json(w.curve);
  j["slope"] = slope_json(w.slope);
  j["contribution"] = rat(w.contribution);
  j["exact"] = w.exact;
  return j;
}

json proof_json(const ConeInequalityCertificate& cert, const ClassCone& cone) {
  const std::size_t dim = cone.dimension();
  json j = json::object();
  j["form"] = cone.format(cert.form);
  json subs = json::array();
  for (const auto& s : cert.subcones) {
    json o = json::object();
    o["choice"] = s.choice;
    json conds = json::array();
    for (const auto& c : s.conditions) conds.push_back(json{{"label", c.label}, {"form", dense(c.form, dim)}});
    o["conditions"] = std::move(conds);
    o["target"] = dense(s.target, dim);
    o["target_text"] = cone.format(s.target);
    o["status"] = to_string(s.status);
    json rays = json::array();
    for (const auto& r : s.rays) rays.push_back(vec(r));
    o["rays"] = std::move(rays);
    o["multipliers"] = vec(s.multipliers);
    o["counterexample"] = s.counterexample ? vec(*s.counterexample) : json(nullptr);
    subs.push_back(std::move(o));
  }
  j["subcones"] = std::move(subs);
  return j;
}

json cone_json(const LowerBoundReport& report, const std::vector<Vector>& model_rays) {
  const ConeModel& m = report.model;
  const ClassCone& cone = m.curve.cone;
  const std::size_t dim = cone.dimension();
  json j = json::object();
  j["variables"] = cone.variables();
  j["unit"] = *cone.unit();
  json constraints = json::array();
  for (const auto& c : cone.constraints()) {
    constraints.push_back(json{{"label", c.label}, {"origin", c.origin}, {"form", dense(c.form, dim)}});
  }
  j["constraints"] = std::move(constraints);
  j["base_constraints"] = m.base_cone.constraints().size();
  json probes = json::array();
  for (const auto& p : m.probes) {
    json o = json::object();
    o["label"] = p.probe.label;
    o["bound"] = dense(p.probe.bound, m.base_cone.dimension());
    o["bound_text"] = m.base_cone.format(p.probe.bound);
    o["applicable"] = p.probe.applicable;
    o["proof"] = proof_json(p.proof, m.base_cone);
    probes.push_back(std::move(o));
  }
  j["probes"] = std::move(probes);
  j["mult_bounded"] = m.mult_bounded;
  json stages = json::array();
  for (std::size_t i = 0; i < m.restriction.stages.size(); ++i) {
    stages.push_back(json{{"label", i < m.restriction.labels.size() ? m.restriction.labels[i] : std::string()},
                          {"form", dense(m.restriction.stages[i], dim)},
                          {"text", cone.format(m.restriction.stages[i])}});
  }
  j["restriction"] =
      json{{"kind", m.restriction.kind == RestrictionModel::Kind::split ? "split" : "extension"}, {"stages", stages}};
  j["mu_lower"] = json{{"mode", to_string(m.mu_lower.mode)},
                       {"rule", to_string(m.mu_lower.rule)},
                       {"text", cone.format(m.mu_lower.form())}};
  json rays = json::array();
  for (const auto& r : model_rays) rays.push_back(vec(r));
  j["rays"] = std::move(rays);
  j["target"] = proof_json(report.cone, cone);
  json special = json::array();
  for (const auto& s : report.special) {
    special.push_back(json{{"curve", curve_json(s.curve)},
                           {"slope", slope_json(s.slope)},
                           {"ratio", rat(s.ratio)},
                           {"passes", s.passes}});
  }
  j["special"] = std::move(special);
  j["certified"] = report.certified;
  return j;
}

json evidence_json(const ScenarioResult& r, const std::vector<Vector>* model_rays) {
  json j = json::object();
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(witness_json(w));

  if (const auto* t = std::get_if<ConeTask>(&r.scenario.task)) {
    j["bundle"] = t->bundle.describe();
    const ClassCone& cone = r.lower_report->model.curve.cone;
    const auto rays = model_rays ? *model_rays : cone.rays();
    j["cone"] = cone_json(*r.lower_report, rays);
    j["witnesses"] = std::move(witnesses);
  } else if (const auto* t = std::get_if<NotNefTask>(&r.scenario.task)) {
    j["bundle"] = t->bundle.describe();
    j["curve"] = curve_json(t->curve);
    j["stages"] = *r.non_nef_stages;
    j["quotient_degree"] = *r.quotient_degree;
  } else if (const auto* t = std::get_if<AdditivityTask>(&r.scenario.task)) {
    j["bundle"] = t->bundle.describe();
    j["k"] = t->k;
    j["min_k"] = t->min_k;
    j["eps_nef_part"] = rat(t->eps_nef_part);
    j["eps_line"] = rat(t->eps_line);
    j["nef_part"] = opt_string(t->facts.nef_part);
    j["line_ample_globally_generated"] = opt_string(t->facts.line_ample_globally_generated);
    j["witnesses"] = std::move(witnesses);
  } else if (const auto* t = std::get_if<EquivariantTask>(&r.scenario.task)) {
    j["bundle"] = t->bundle.describe();
    const auto& families = t->bundle.as<EquivariantLinesShape>()->families;
    j["families"] = families;
    j["uniform_splitting"] = opt_string(t->bundle.flags().uniform_splitting);
    j["lower"] = rat(r.equivariant->lower);
    j["exact"] = r.equivariant->exact;
    j["argmin_family"] = r.equivariant->argmin_family;
  } else if (const auto* t = std::get_if<SmallConstructionTask>(&r.scenario.task)) {
    j["r"] = r.small->r;
    j["r_given"] = t->r.has_value();
    j["delta"] = rat(r.small->delta);
    j["upper"] = rat(r.small->upper);
    j["below_delta"] = r.small->below_delta;
  } else if (const auto* t = std::get_if<ReductionTask>(&r.scenario.task)) {
    j["rank"] = t->rank;
    j["rank_q1"] = t->rank_q1;
    j["det_q1"] = t->det_q1.to_string();
    j["hypothesis"] = opt_string(t->hypothesis);
    j["epsilon_det_q1"] = rat(r.reduction->epsilon_det_q1);
    j["value"] = rat(r.reduction->value);
    j["floor"] = rat(r.reduction->floor);
    j["floor_applies"] = r.reduction->floor_applies;
  }
  return j;
}

json certificate_json(const ScenarioResult& r, const std::vector<Vector>* model_rays) {
  const Scenario& s = r.scenario;
  json j = json::object();
  j["format"] = kFormat;
  j["version"] = kVersion;

  json source = json::object();
  if (!s.source.builtin.empty()) {
    source["builtin"] = s.source.builtin;
    json params = json::object();
    for (const auto& [k, v] : s.source.params) params[k] = v;  // std::map: sorted keys
    source["params"] = std::move(params);
  } else {
    source["toml"] = s.source.toml;
  }
  j["scenario"] = json{{"id", s.id}, {"title", s.title}, {"kind", kind_name(s.task)}, {"source", source}};
  j["options"] = json{{"level", opt_rat(r.level_option)}};

  json result = json::object();
  result["level"] = rat(r.level);
  result["level_overridden"] = r.level_overridden;
  result["lower"] = opt_rat(r.lower);
  result["upper"] = opt_rat(r.upper);
  result["exact"] = r.exact();
  result["certified"] = r.certified;
  result["passed"] = r.passed();
  result["failures"] = r.failures;
  result["mismatches"] = r.mismatches;
  result["notes"] = r.notes;
  j["result"] = std::move(result);

  const Expected& e = s.expected;
  j["expected"] = json{{"lower", opt_rat(e.lower)},
                       {"upper", opt_rat(e.upper)},
                       {"quotient_degree", e.quotient_degree ? json(*e.quotient_degree) : json(nullptr)},
                       {"floor", opt_rat(e.floor)},
                       {"citation", e.citation}};
  j["evidence"] = evidence_json(r, model_rays);
  return j;
}

// Rationals, rays and other flat arrays stay on one line; everything else
// is indented by two spaces per level.
bool is_flat(const json& j) {
  if (j.is_primitive()) return true;
  if (j.empty()) return true;
  if (j.is_object()) return j.size() == 2 && j.contains("num") && j.contains("den");
  return std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive() || (x.is_object() && is_flat(x)); });
}

void write_json(std::string& out, const json& j, int depth) {
  if (is_flat(j)) {
    out += j.dump(-1, ' ', false, json::error_handler_t::strict);
    return;
  }
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(k).dump() + ": ";
      write_json(out, v, depth + 1);
    }
    out += "\n" + close + "}";
  } else {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_json(out, j[i], depth + 1);
    }
    out += "\n" + close + "]";
  }
}

std::string render(const json& j) {
  std::string out;
  write_json(out, j, 0);
  out += "\n";
  return out;
}

// ------------------------------------------------------------------ reading

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const json& at(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw Malformed(path + ": missing field '" + key + "'");
  return j.at(key);
}

Integer read_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                        [](char c) { return c >= '0' && c <= '9'; })) {
      return Integer(s);
    }
  }
  throw Malformed(path + ": expected an integer");
}

Rational read_rat(const json& j, const std::string& path) {
  if (!j.is_object()) throw Malformed(path + ": expected {\"num\": n, \"den\": d}");
  const Integer num = read_integer(at(j, "num", path), path + ".num");
  const Integer den = read_integer(at(j, "den", path), path + ".den");
  if (den <= 0) throw Malformed(path + ".den: must be positive");
  return Rational(num, den);
}

std::optional<Rational> read_opt_rat(const json& j, const std::string& path) {
  if (j.is_null()) return std::nullopt;
  return read_rat(j, path);
}

Vector read_vec(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) throw Malformed(path + ": expected an array");
  if (j.size() != dim) {
    throw Malformed(path + ": expected " + std::to_string(dim) + " entries, found " + std::to_string(j.size()));
  }
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rat(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

LinearForm read_form(const json& j, const std::string& path, std::size_t dim) {
  return LinearForm(read_vec(j, path, dim));
}

bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw Malformed(path + ": expected true or false");
  return j.get<bool>();
}

const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw Malformed(path + ": expected an array");
  return j;
}

std::string show(const json& j) {
  std::string s = j.dump();
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

// First place where the two documents differ, as "path: a vs b".
std::optional<std::string> first_difference(const json& have, const json& want, const std::string& path) {
  if (have.type() != want.type() && !(have.is_number() && want.is_number())) {
    return path + ": certificate has " + show(have) + ", replay gives " + show(want);
  }
  if (have.is_object()) {
    for (const auto& [k, v] : want.items()) {
      if (!have.contains(k)) return path + "." + k + ": missing from the certificate";
      if (auto d = first_difference(have.at(k), v, path + "." + k)) return d;
    }
    for (const auto& [k, v] : have.items()) {
      if (!want.contains(k)) return path + "." + k + ": not part of a certificate";
    }
    return std::nullopt;
  }
  if (have.is_array()) {
    for (std::size_t i = 0; i < std::min(have.size(), want.size()); ++i) {
      if (auto d = first_difference(have[i], want[i], path + "[" + std::to_string(i) + "]")) return d;
    }
    if (have.size() != want.size()) {
      return path + ": certificate has " + std::to_string(have.size()) + " entries, replay gives " +
             std::to_string(want.size());
    }
    return std::nullopt;
  }
  if (have != want) return path + ": certificate has " + show(have) + ", replay gives " + show(want);
  return std::nullopt;
}

// ------------------------------------------------------------------- replay

bool satisfies(const std::vector<LinearForm>& rows, const Vector& point) {
  return std::all_of(rows.begin(), rows.end(), [&](const LinearForm& r) { return r.evaluate(point) >= 0; });
}

std::string combination_text(const std::vector<LinearForm>& rows, const Vector& lambda, const ClassCone& cone) {
  LinearForm sum;
  for (std::size_t i = 0; i < rows.size(); ++i) sum += lambda[i] * rows[i];
  return cone.format(sum);
}

// Checks one cone-inequality proof against the branches the form resolves
// into. `model_rays`, when given, are rays of the whole cone that must each
// lie in some subcone.
ConeInequalityCertificate replay_proof(const json& j, const std::string& path, const PlForm& form,
                                       const std::vector<Branch>& branches, const ClassCone& cone,
                                       const std::vector<Vector>* model_rays) {
  const std::size_t dim = cone.dimension();
  const std::size_t u = *cone.unit();
  ConeInequalityCertificate cert;
  cert.form = form;

  const json& subs = read_array(at(j, "subcones", path), path + ".subcones");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string p = path + ".subcones[" + std::to_string(i) + "]";
    const json& o = subs[i];
    SubconeCertificate s;
    for (const auto& c : read_array(at(o, "choice", p), p + ".choice")) {
      if (!c.is_number_unsigned()) throw Malformed(p + ".choice: expected indices");
      s.choice.push_back(c.get<std::size_t>());
    }
    const json& conds = read_array(at(o, "conditions", p), p + ".conditions");
    for (std::size_t k = 0; k < conds.size(); ++k) {
      const std::string q = p + ".conditions[" + std::to_string(k) + "]";
      const json& label = at(conds[k], "label", q);
      if (!label.is_string()) throw Malformed(q + ".label: expected a string");
      s.conditions.push_back({read_form(at(conds[k], "form", q), q + ".form", dim), label.get<std::string>()});
    }
    s.target = read_form(at(o, "target", p), p + ".target", dim);
    const json& status = at(o, "status", p);
    if (status == "nonneg") {
      s.status = SubconeStatus::nonneg;
    } else if (status == "vacuous") {
      s.status = SubconeStatus::vacuous;
    } else if (status == "counterexample") {
      s.status = SubconeStatus::counterexample;
    } else {
      throw Malformed(p + ".status: expected nonneg, vacuous or counterexample");
    }
    const json& rays = read_array(at(o, "rays", p), p + ".rays");
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s.rays.push_back(read_vec(rays[k], p + ".rays[" + std::to_string(k) + "]", dim));
    }
    const json& mult = read_array(at(o, "multipliers", p), p + ".multipliers");
    for (std::size_t k = 0; k < mult.size(); ++k) {
      s.multipliers.push_back(read_rat(mult[k], p + ".multipliers[" + std::to_string(k) + "]"));
    }
    const json& cex = at(o, "counterexample", p);
    if (!cex.is_null()) s.counterexample = read_vec(cex, p + ".counterexample", dim);
    cert.subcones.push_back(std::move(s));
  }

  // coverage by ray containment: every ray of the cone falls in a subcone
  if (model_rays) {
    for (std::size_t k = 0; k < model_rays->size(); ++k) {
      const Vector& r = (*model_rays)[k];
      const bool covered = std::any_of(cert.subcones.begin(), cert.subcones.end(), [&](const SubconeCertificate& s) {
        return std::all_of(s.conditions.begin(), s.conditions.end(),
                           [&](const BranchCondition& c) { return c.form.evaluate(r) >= 0; });
      });
      if (!covered) {
        throw Mismatch(path + ": coverage: ray " + cone.format_point(r) +
                       " of the cone lies in no certified subcone, so the subcones do not cover the cone");
      }
    }
  }
  if (cert.subcones.size() != branches.size()) {
    throw Mismatch(path + ": coverage: " + std::to_string(cert.subcones.size()) +
                   " subcones certified, the resolved form has " + std::to_string(branches.size()) + " branches");
  }

  for (std::size_t i = 0; i < cert.subcones.size(); ++i) {
    const std::string p = path + ".subcones[" + std::to_string(i) + "]";
    const SubconeCertificate& s = cert.subcones[i];
    const Branch& b = branches[i];
    if (s.choice != b.choice) throw Mismatch(p + ".choice: does not match branch " + std::to_string(i));
    if (s.conditions.size() != b.conditions.size()) {
      throw Mismatch(p + ".conditions: branch " + std::to_string(i) + " has " + std::to_string(b.conditions.size()) +
                     " conditions");
    }
    for (std::size_t k = 0; k < s.conditions.size(); ++k) {
      if (!(s.conditions[k].form == b.conditions[k].form) || s.conditions[k].label != b.conditions[k].label) {
        throw Mismatch(p + ".conditions[" + std::to_string(k) + "]: expected " + b.conditions[k].label + " (" +
                       cone.format(b.conditions[k].form) + " >= 0)");
      }
    }
    if (!(s.target == b.form)) {
      throw Mismatch(p + ".target: " + cone.format(s.target) + " is not the branch form " + cone.format(b.form));
    }

    const auto rows = subcone_constraints(cone, s.conditions);
    for (std::size_t k = 0; k < s.rays.size(); ++k) {
      const Vector& r = s.rays[k];
      if (std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; })) {
        throw Mismatch(p + ".rays[" + std::to_string(k) + "]: zero vector");
      }
      if (!satisfies(rows, r)) {
        throw Mismatch(p + ".rays[" + std::to_string(k) + "]: " + cone.format_point(r) + " lies outside the subcone");
      }
    }

    if (s.status == SubconeStatus::counterexample) {
      if (!s.multipliers.empty()) throw Mismatch(p + ".multipliers: a refuted subcone carries no multipliers");
      if (!s.counterexample) throw Mismatch(p + ".counterexample: missing");
      const Vector& x = *s.counterexample;
      if (x[u] != 1) throw Mismatch(p + ".counterexample: unit coordinate is not 1");
      if (!satisfies(rows, x)) throw Mismatch(p + ".counterexample: point lies outside the subcone");
      if (s.target.evaluate(x) >= 0) {
        throw Mismatch(p + ".counterexample: target is " + to_string(s.target.evaluate(x)) + " >= 0 there");
      }
      continue;
    }
    if (s.counterexample) throw Mismatch(p + ".counterexample: present on a subcone marked " + to_string(s.status));

    // Farkas identity: sum lambda_i * row_i == goal with lambda >= 0
    const LinearForm goal = s.status == SubconeStatus::nonneg ? s.target : -LinearForm::variable(u);
    const std::string goal_text = s.status == SubconeStatus::nonneg ? cone.format(goal) : "-1 (empty slice u = 1)";
    if (s.multipliers.size() != rows.size()) {
      throw Mismatch(p + ".multipliers: " + std::to_string(s.multipliers.size()) + " given for " +
                     std::to_string(rows.size()) + " constraints");
    }
    for (std::size_t k = 0; k < s.multipliers.size(); ++k) {
      if (s.multipliers[k] < 0) {
        throw Mismatch(p + ".multipliers[" + std::to_string(k) + "]: negative multiplier " +
                       to_string(s.multipliers[k]));
      }
    }
    LinearForm sum;
    for (std::size_t k = 0; k < rows.size(); ++k) sum += s.multipliers[k] * rows[k];
    if (!(sum == goal)) {
      throw Mismatch(p + ".multipliers: identity fails, they recombine to " +
                     combination_text(rows, s.multipliers, cone) + " instead of " + goal_text);
    }
    for (std::size_t k = 0; k < s.rays.size(); ++k) {
      if (goal.evaluate(s.rays[k]) < 0) {
        throw Mismatch(p + ".rays[" + std::to_string(k) + "]: negative value contradicts the multipliers");
      }
    }
  }
  return cert;
}

// Rebuilds the lower-bound report of a cone task from the certificate's
// evidence. `model_rays` receives the checked rays of the model cone.
LowerBoundReport replay_lower_bound(const ConeTask& task, const Rational& level, const json& cone_j,
                                    std::vector<Vector>& model_rays) {
  const std::string path = "evidence.cone";
  LowerBoundReport report;
  report.level = level;
  ConeModel& model = report.model;
  model.curve = base_curve_form(task.bundle, task.setup);
  model.base_cone = model.curve.cone;
  const ClassCone& base = model.base_cone;
  const std::size_t u = *base.unit();

  const json& probes = read_array(at(cone_j, "probes", path), path + ".probes");
  if (probes.size() != task.setup.probes.probes.size()) {
    throw Mismatch(path + ".probes: " + std::to_string(probes.size()) + " probes, the scenario has " +
                   std::to_string(task.setup.probes.probes.size()));
  }
  std::vector<ProbeApplicability> bounds;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const std::string p = path + ".probes[" + std::to_string(i) + "]";
    const Probe& probe = task.setup.probes.probes[i];
    ProbeProof proof;
    proof.probe.label = probe.label;
    proof.probe.bound = intersect_form(probe.cls, model.curve.class_vars);
    proof.probe.applicable = read_bool(at(probes[i], "applicable", p), p + ".applicable");
    const PlForm form = PlForm::linear(proof.probe.bound - LinearForm::variable(u));
    proof.proof = replay_proof(at(probes[i], "proof", p), p + ".proof", form,
                               form.resolve(base.variables(), base.unit()), base, nullptr);
    if (proof.probe.applicable && !proof.proof.holds()) {
      throw Mismatch(p + ".applicable: the probe is marked applicable but its proof has a counterexample");
    }
    bounds.push_back(proof.probe);
    model.probes.push_back(std::move(proof));
  }
  model.mult_bounded = add_multiplicity_variable(model.curve, bounds);
  model.restriction = restriction_model(task.bundle, model.curve);
  model.mu_lower = mu_min_lb_extension(model.restriction);
  const ClassCone& cone = model.curve.cone;
  const std::size_t dim = cone.dimension();

  // rays of the model cone: each in the cone and extremal
  const auto rows = cone.constraint_forms();
  const json& rays = read_array(at(cone_j, "rays", path), path + ".rays");
  for (std::size_t k = 0; k < rays.size(); ++k) {
    const std::string p = path + ".rays[" + std::to_string(k) + "]";
    Vector r = read_vec(rays[k], p, dim);
    if (!satisfies(rows, r)) throw Mismatch(p + ": " + cone.format_point(r) + " lies outside the cone");
    std::vector<Vector> active;
    for (const auto& row : rows) {
      if (row.evaluate(r) == 0) {
        Vector a(dim);
        for (std::size_t c = 0; c < dim; ++c) a[c] = row[c];
        active.push_back(std::move(a));
      }
    }
    if (polyhedral::rank(active, dim) + 1 != dim) throw Mismatch(p + ": not an extremal ray of the cone");
    model_rays.push_back(std::move(r));
  }

  report.cone = replay_proof(at(cone_j, "target", path), path + ".target", level_target(model, level),
                             level_branches(model, level), cone, &model_rays);
  for (const auto& curve : task.setup.special_curves) report.special.push_back(check_special_curve(task.bundle, curve, level));
  report.failures = lower_bound_failures(report);
  report.certified = report.failures.empty();
  return report;
}

void verify_one(const json& c, VerifyReport& out) {
  if (!c.is_object() || !c.contains("format") || c.at("format") != kFormat) {
    throw Malformed("not a seshadri certificate (format field missing or wrong)");
  }
  if (!c.contains("version") || c.at("version") != kVersion) {
    throw Malformed("unsupported certificate version");
  }
  const json& sj = at(c, "scenario", "certificate");
  const json& src = at(sj, "source", "scenario");
  ScenarioSource source;
  if (src.contains("builtin")) {
    if (!src.at("builtin").is_string()) throw Malformed("scenario.source.builtin: expected a string");
    source.builtin = src.at("builtin").get<std::string>();
    const json& params = at(src, "params", "scenario.source");
    if (!params.is_object()) throw Malformed("scenario.source.params: expected an object");
    for (const auto& [k, v] : params.items()) {
      if (!v.is_string()) throw Malformed("scenario.source.params." + k + ": expected a string");
      source.params[k] = v.get<std::string>();
    }
  } else {
    const json& toml = at(src, "toml", "scenario.source");
    if (!toml.is_string()) throw Malformed("scenario.source.toml: expected a string");
    source.toml = toml.get<std::string>();
  }
  const json& id = at(sj, "id", "scenario");
  out.scenarios.push_back(id.is_string() ? id.get<std::string>() : show(id));

  Scenario scenario = [&] {
    try {
      return scenario_from_source(source);
    } catch (const Error& e) {
      throw Malformed(std::string("cannot rebuild the scenario: ") + e.what());
    }
  }();

  RunOptions options;
  options.level = read_opt_rat(at(at(c, "options", "certificate"), "level", "options"), "options.level");
  std::vector<Vector> model_rays;
  if (std::holds_alternative<ConeTask>(scenario.task)) {
    const json& cone_j = at(at(c, "evidence", "certificate"), "cone", "evidence");
    options.lower_bound = [&](const ConeTask& task, const Rational& level) {
      return replay_lower_bound(task, level, cone_j, model_rays);
    };
  }
  ScenarioResult replay = [&] {
    try {
      return run_scenario(scenario, options);
    } catch (const Error& e) {
      throw Malformed(std::string("scenario does not run: ") + e.what());
    }
  }();

  const json want = certificate_json(replay, std::holds_alternative<ConeTask>(scenario.task) ? &model_rays : nullptr);
  if (auto diff = first_difference(c, want, "certificate")) throw Mismatch(*diff);

  if (!replay.passed() && out.outcome == VerifyOutcome::pass) {
    out.outcome = VerifyOutcome::result_failed;
    const std::string why = !replay.failures.empty() ? replay.failures.front() : replay.mismatches.front();
    out.message = replay.scenario.id + ": replay matches, but the run did not pass: " + why;
  }
}

}  // namespace

std::string write_certificate(const ScenarioResult& result) { return render(certificate_json(result, nullptr)); }

std::string write_certificate_set(const std::vector<ScenarioResult>& results) {
  json j = json::object();
  j["format"] = kSetFormat;
  j["version"] = kVersion;
  json list = json::array();
  for (const auto& r : results) list.push_back(certificate_json(r, nullptr));
  j["certificates"] = std::move(list);
  return render(j);
}

int VerifyReport::exit_code() const {
  switch (outcome) {
    case VerifyOutcome::pass:
      return 0;
    case VerifyOutcome::result_failed:
      return 1;
    case VerifyOutcome::malformed:
      return 2;
    case VerifyOutcome::mismatch:
      return 3;
  }
  return 3;
}

VerifyReport verify_certificate(const std::string& json_text) {
  VerifyReport report;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    report.outcome = VerifyOutcome::malformed;
    report.message = std::string("invalid JSON: ") + e.what();
    return report;
  }
  try {
    if (doc.is_object() && doc.contains("format") && doc.at("format") == kSetFormat) {
      if (!doc.contains("version") || doc.at("version") != kVersion) throw Malformed("unsupported certificate version");
      const json& list = read_array(at(doc, "certificates", "certificate set"), "certificates");
      if (list.empty()) throw Malformed("certificate set is empty");
      for (std::size_t i = 0; i < list.size(); ++i) {
        try {
          verify_one(list[i], report);
        } catch (const Mismatch& e) {
          throw Mismatch("certificates[" + std::to_string(i) + "] " + e.what());
        }
      }
    } else {
      verify_one(doc, report);
    }
  } catch (const Malformed& e) {
    report.outcome = VerifyOutcome::malformed;
    report.message = e.what();
  } catch (const Mismatch& e) {
    report.outcome = VerifyOutcome::mismatch;
    report.message = std::string("replay mismatch at ") + e.what();
  } catch (const json::exception& e) {
    report.outcome = VerifyOutcome::malformed;
    report.message = std::string("malformed certificate: ") + e.what();
  }
  return report;
}

VerifyReport verify_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    VerifyReport report;
    report.outcome = VerifyOutcome::malformed;
    report.message = "cannot read '" + path + "'";
    return report;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return verify_certificate(buf.str());
}

}  // namespace seshadri
