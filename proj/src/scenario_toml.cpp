#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "seshadri/scenario.hpp"

namespace seshadri {

namespace {

std::string where(const toml::source_region& src) {
  return "line " + std::to_string(src.begin.line) + ", column " + std::to_string(src.begin.column);
}

[[noreturn]] void fail(const toml::node& node, const std::string& message) {
  throw InputError(where(node.source()) + ": " + message);
}

/// Typed access to one TOML table with strict key checking.
class Table {
 public:
  Table(const toml::table& table, std::string path) : table_(table), path_(std::move(path)) {}

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, node] : table_) {
      if (!allowed.count(std::string(key.str()))) {
        fail(node, "unknown key '" + qualified(std::string(key.str())) + "'");
      }
    }
  }

  const toml::node* find(const std::string& key) const { return table_.get(key); }
  bool has(const std::string& key) const { return find(key) != nullptr; }

  const toml::node& require(const std::string& key) const {
    const toml::node* n = find(key);
    if (n == nullptr) {
      throw InputError(where(table_.source()) + ": missing key '" + qualified(key) + "'");
    }
    return *n;
  }

  std::string string(const std::string& key) const { return as_string(require(key), key); }

  std::string string_or(const std::string& key, std::string fallback) const {
    return has(key) ? string(key) : fallback;
  }

  std::int64_t integer(const std::string& key) const { return as_integer(require(key), key); }

  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  bool boolean_or(const std::string& key, bool fallback) const {
    const toml::node* n = find(key);
    if (n == nullptr) return fallback;
    if (!n->is_boolean()) fail(*n, "'" + qualified(key) + "' must be true or false");
    return n->as_boolean()->get();
  }

  Rational rational(const std::string& key) const { return as_rational(require(key), key); }

  std::optional<Rational> rational_opt(const std::string& key) const {
    return has(key) ? std::optional<Rational>(rational(key)) : std::nullopt;
  }

  std::vector<std::int64_t> integers(const std::string& key) const {
    const toml::node& n = require(key);
    const toml::array* arr = n.as_array();
    if (arr == nullptr) fail(n, "'" + qualified(key) + "' must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& item : *arr) out.push_back(as_integer(item, key));
    return out;
  }

  std::vector<std::int64_t> integers_or(const std::string& key, std::vector<std::int64_t> fallback) const {
    return has(key) ? integers(key) : fallback;
  }

  std::vector<std::string> strings(const std::string& key) const {
    const toml::node& n = require(key);
    const toml::array* arr = n.as_array();
    if (arr == nullptr) fail(n, "'" + qualified(key) + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : *arr) out.push_back(as_string(item, key));
    return out;
  }

  std::vector<std::vector<std::int64_t>> integer_rows(const std::string& key) const {
    const toml::node& n = require(key);
    const toml::array* arr = n.as_array();
    if (arr == nullptr) fail(n, "'" + qualified(key) + "' must be an array of integer arrays");
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& row : *arr) {
      const toml::array* inner = row.as_array();
      if (inner == nullptr) fail(row, "'" + qualified(key) + "' must be an array of integer arrays");
      std::vector<std::int64_t> values;
      for (const auto& item : *inner) values.push_back(as_integer(item, key));
      out.push_back(std::move(values));
    }
    return out;
  }

  std::optional<Table> table(const std::string& key) const {
    const toml::node* n = find(key);
    if (n == nullptr) return std::nullopt;
    if (!n->is_table()) fail(*n, "'" + qualified(key) + "' must be a table");
    return Table(*n->as_table(), qualified(key));
  }

  std::vector<Table> tables(const std::string& key) const {
    std::vector<Table> out;
    const toml::node* n = find(key);
    if (n == nullptr) return out;
    const toml::array* arr = n->as_array();
    if (arr == nullptr || !arr->is_array_of_tables()) fail(*n, "'" + qualified(key) + "' must be [[" + key + "]] entries");
    for (const auto& item : *arr) out.emplace_back(*item.as_table(), qualified(key));
    return out;
  }

  const toml::table& raw() const { return table_; }

  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string as_string(const toml::node& n, const std::string& key) const {
    if (!n.is_string()) fail(n, "'" + qualified(key) + "' must be a string");
    return n.as_string()->get();
  }

  std::int64_t as_integer(const toml::node& n, const std::string& key) const {
    if (n.is_floating_point()) fail(n, "'" + qualified(key) + "' must be an integer; floats are rejected");
    if (!n.is_integer()) fail(n, "'" + qualified(key) + "' must be an integer");
    return n.as_integer()->get();
  }

  Rational as_rational(const toml::node& n, const std::string& key) const {
    if (n.is_floating_point()) {
      fail(n, "'" + qualified(key) + "' is a float; write exact rationals as \"p/q\" strings");
    }
    if (n.is_integer()) return n.as_integer()->get();
    if (!n.is_string()) fail(n, "'" + qualified(key) + "' must be an integer or a \"p/q\" string");
    try {
      return parse_rational(n.as_string()->get());
    } catch (const InputError& e) {
      fail(n, "'" + qualified(key) + "': " + e.what());
    }
  }

  const toml::table& table_;
  std::string path_;
};

AmbientSpace read_ambient(const Table& root) {
  const auto t = root.table("ambient");
  if (!t) throw InputError("scenario needs an [ambient] table");
  t->allow({"kind", "e", "n"});
  const std::string kind = t->string("kind");
  try {
    if (kind == "hirzebruch") return AmbientSpace::hirzebruch(static_cast<int>(t->integer("e")));
    if (kind == "projective_plane") return AmbientSpace::projective_plane();
    if (kind == "projective_space") return AmbientSpace::projective_space(static_cast<int>(t->integer("n")));
  } catch (const DomainError& e) {
    fail(t->require("kind"), e.what());
  }
  fail(t->require("kind"), "ambient kind must be hirzebruch, projective_plane or projective_space, got '" + kind + "'");
}

DivisorClass read_class(const Table& t, const std::string& key, const AmbientSpace& x) {
  const auto coeffs = t.integers(key);
  if (coeffs.size() != x.basis_size()) {
    fail(t.require(key), "'" + t.qualified(key) + "' needs " + std::to_string(x.basis_size()) +
                             " coefficients on " + x.name());
  }
  return DivisorClass(x, coeffs);
}

BundleFlags read_flags(const Table& bundle) {
  BundleFlags flags;
  const auto t = bundle.table("flags");
  if (!t) return flags;
  t->allow({"ample", "nef", "globally_generated", "semistable_vanishing_discriminant", "uniform_splitting"});
  auto read = [&](const char* key, std::optional<std::string>& slot) {
    const toml::node* n = t->find(key);
    if (n == nullptr) return;
    if (!n->is_string() || n->as_string()->get().empty()) {
      fail(*n, "flag '" + t->qualified(key) + "' must be the citation the fact is taken from (a non-empty string)");
    }
    slot = n->as_string()->get();
  };
  read("ample", flags.ample);
  read("nef", flags.nef);
  read("globally_generated", flags.globally_generated);
  read("semistable_vanishing_discriminant", flags.semistable_vanishing_discriminant);
  read("uniform_splitting", flags.uniform_splitting);
  return flags;
}

BundlePresentation read_bundle(const Table& root, const AmbientSpace& x) {
  const auto t = root.table("bundle");
  if (!t) throw InputError("scenario needs a [bundle] table");
  t->allow({"shape", "sub", "quot", "classes", "points", "families", "rank", "description", "twist", "flags"});
  const std::string shape = t->string("shape");
  const BundleFlags flags = read_flags(*t);
  auto build = [&]() -> BundlePresentation {
    if (shape == "split") {
      std::vector<DivisorClass> classes;
      for (const auto& row : t->integer_rows("classes")) {
        if (row.size() != x.basis_size()) fail(t->require("classes"), "every summand needs " +
                                                                          std::to_string(x.basis_size()) + " coefficients");
        classes.emplace_back(x, row);
      }
      if (classes.empty()) fail(t->require("classes"), "split bundle needs at least one summand");
      return BundlePresentation::split(classes, flags);
    }
    if (shape == "extension") return BundlePresentation::extension(read_class(*t, "sub", x), read_class(*t, "quot", x), flags);
    if (shape == "ideal_extension") {
      return BundlePresentation::ideal_extension(read_class(*t, "sub", x), read_class(*t, "quot", x),
                                                 t->strings("points"), flags);
    }
    if (shape == "equivariant_lines") {
      if (x.kind() == AmbientKind::hirzebruch) fail(t->require("shape"), "equivariant line data needs P^n");
      return BundlePresentation::equivariant_lines(x.dimension(), t->integer_rows("families"), flags);
    }
    if (shape == "abstract") {
      return BundlePresentation::abstract(x, t->integer_or("rank", 2), t->string_or("description", ""), flags);
    }
    fail(t->require("shape"),
         "bundle shape must be split, extension, ideal_extension, equivariant_lines or abstract, got '" + shape + "'");
  };
  try {
    BundlePresentation bundle = build();
    if (t->has("twist")) bundle = twist(bundle, read_class(*t, "twist", x));
    return bundle;
  } catch (const DomainError& e) {
    fail(t->require("shape"), e.what());
  }
}

CurveDatum read_curve(const Table& t, const AmbientSpace& x) {
  t.allow({"label", "class", "marked", "mult", "smooth", "rational", "degrees", "split", "citation"});
  CurveDatum c;
  c.label = t.string("label");
  c.coords = t.integers("class");
  if (c.coords.size() != x.basis_size()) {
    fail(t.require("class"), "curve class needs " + std::to_string(x.basis_size()) + " coefficients on " + x.name());
  }
  c.marked = t.integers_or("marked", {});
  c.mult = t.integer_or("mult", 1);
  if (c.mult < 1) fail(t.require("mult"), "multiplicity at x must be >= 1");
  c.smooth = t.boolean_or("smooth", false);
  c.rational = t.boolean_or("rational", false);
  if (t.has("degrees")) c.degrees = t.integers("degrees");
  c.degrees_split = t.boolean_or("split", false);
  c.citation = t.string_or("citation", "");
  if (c.mult > 1 && c.smooth) fail(t.require("mult"), "a smooth curve has multiplicity 1 at every point");
  return c;
}

ProbeKind read_probe_kind(const Table& t) {
  const std::string kind = t.string("kind");
  if (kind == "fiber-pencil") return ProbeKind::fiber_pencil;
  if (kind == "very-ample") return ProbeKind::very_ample;
  if (kind == "line-pencil") return ProbeKind::line_pencil;
  fail(t.require("kind"), "probe kind must be fiber-pencil, very-ample or line-pencil, got '" + kind + "'");
}

CertifySetup read_setup(const Table& root, const BundlePresentation& bundle) {
  const AmbientSpace& x = bundle.ambient();
  CertifySetup setup = default_setup(bundle);
  const auto probes = root.tables("probe");
  if (!probes.empty()) {
    setup.probes.probes.clear();
    for (const auto& p : probes) {
      p.allow({"label", "class", "kind"});
      setup.probes.probes.push_back({p.string("label"), read_class(p, "class", x), read_probe_kind(p)});
    }
    try {
      validate_probes(setup.probes, nef_cone(x));
    } catch (const DomainError& e) {
      fail(probes.front().raw(), e.what());
    }
  }
  for (const auto& c : root.tables("constraint")) {
    c.allow({"text", "label"});
    setup.extra_constraints.push_back({c.string("text"), c.string_or("label", "scenario constraint")});
  }
  for (const auto& c : root.tables("special")) setup.special_curves.push_back(read_curve(c, x));
  for (const auto& c : root.tables("witness")) setup.witnesses.push_back(read_curve(c, x));
  return setup;
}

Expected read_expected(const Table& root) {
  Expected e;
  const auto t = root.table("expected");
  if (!t) return e;
  t->allow({"lower", "upper", "quotient_degree", "floor", "citation"});
  e.lower = t->rational_opt("lower");
  e.upper = t->rational_opt("upper");
  if (t->has("quotient_degree")) e.quotient_degree = t->integer("quotient_degree");
  e.floor = t->rational_opt("floor");
  e.citation = t->string_or("citation", "");
  if (e.lower && e.upper && *e.lower > *e.upper) {
    fail(t->require("lower"), "expected lower bound exceeds the expected upper bound");
  }
  if ((e.lower || e.upper || e.quotient_degree || e.floor) && e.citation.empty()) {
    fail(t->raw(), "expected values need a 'citation'");
  }
  return e;
}

void reject_cone_tables(const Table& root, const std::string& kind) {
  for (const char* key : {"probe", "constraint", "special", "witness"}) {
    if (root.has(key) && kind != "cone" && !(kind == "additivity" && std::string(key) == "witness")) {
      fail(root.require(key), "[[" + std::string(key) + "]] is not used by kind '" + kind + "'");
    }
  }
}

ScenarioTask read_task(const Table& root, const std::string& kind) {
  reject_cone_tables(root, kind);
  if (kind == "cone") {
    const AmbientSpace x = read_ambient(root);
    if (!x.is_surface()) fail(root.require("ambient"), "cone certification needs a surface (F_e or P^2)");
    const auto bundle = read_bundle(root, x);
    ConeTask task{bundle, read_setup(root, bundle), root.has("level") ? root.rational("level") : Rational(1)};
    // the cone model must build before anything runs
    try {
      (void)build_cone_model(task.bundle, task.setup);
    } catch (const Error& e) {
      throw InputError(std::string("cone model: ") + e.what());
    }
    return task;
  }
  if (kind == "not_nef") {
    const AmbientSpace x = read_ambient(root);
    const auto curve = root.table("curve");
    if (!curve) throw InputError("kind 'not_nef' needs a [curve] table");
    return NotNefTask{read_bundle(root, x), read_curve(*curve, x)};
  }
  if (kind == "additivity") {
    const AmbientSpace x = read_ambient(root);
    if (x.kind() == AmbientKind::hirzebruch) fail(root.require("ambient"), "additivity twists by O(1); use P^n");
    const auto base = read_bundle(root, x);
    const auto t = root.table("additivity");
    if (!t) throw InputError("kind 'additivity' needs an [additivity] table");
    t->allow({"k", "min_k", "eps_nef_part", "eps_line", "nef_part", "line"});
    AdditivityTask task{twist(base, DivisorClass(x, {t->integer_or("k", 2)})), t->integer_or("k", 2)};
    task.min_k = t->integer_or("min_k", 2);
    if (t->has("eps_nef_part")) task.eps_nef_part = t->rational("eps_nef_part");
    if (t->has("eps_line")) task.eps_line = t->rational("eps_line");
    if (task.k >= task.min_k) task.facts.nef_part = t->string("nef_part");
    task.facts.line_ample_globally_generated = t->string("line");
    for (const auto& w : root.tables("witness")) task.witnesses.push_back(read_curve(w, x));
    return task;
  }
  if (kind == "equivariant_lines") {
    const AmbientSpace x = read_ambient(root);
    return EquivariantTask{read_bundle(root, x)};
  }
  if (kind == "small_construction") {
    const auto t = root.table("small");
    if (!t) throw InputError("kind 'small_construction' needs a [small] table");
    t->allow({"delta", "r"});
    SmallConstructionTask task;
    task.delta = t->rational("delta");
    if (task.delta <= 0) fail(t->require("delta"), "delta must be positive");
    if (t->has("r")) {
      task.r = t->integer("r");
      if (*task.r < 1) fail(t->require("r"), "r must be >= 1");
    }
    return task;
  }
  if (kind == "reduction") {
    const auto t = root.table("reduction");
    if (!t) throw InputError("kind 'reduction' needs a [reduction] table");
    t->allow({"rank", "rank_q1", "det", "hypothesis"});
    ReductionTask task;
    task.rank = t->integer("rank");
    task.rank_q1 = t->integer("rank_q1");
    task.det_q1 = read_class(*t, "det", AmbientSpace::projective_plane());
    if (t->has("hypothesis")) {
      task.hypothesis = t->string("hypothesis");
      if (task.hypothesis->empty()) fail(t->require("hypothesis"), "the hypothesis needs its citation");
    }
    return task;
  }
  fail(root.require("kind"), "kind must be cone, not_nef, additivity, equivariant_lines, small_construction or "
                             "reduction, got '" + kind + "'");
}

}  // namespace

Scenario parse_scenario_toml(const std::string& text, const std::string& origin) {
  toml::table doc;
  try {
    doc = toml::parse(text, origin);
  } catch (const toml::parse_error& e) {
    throw InputError(origin + ": " + where(e.source()) + ": " + std::string(e.description()));
  }
  const Table root(doc, "");
  root.allow({"id", "title", "kind", "level", "ambient", "bundle", "probe", "constraint", "special", "witness",
              "curve", "additivity", "small", "reduction", "expected"});
  try {
    const std::string kind = root.string("kind");
    Scenario s{root.string("id"), root.string_or("title", ""), read_task(root, kind)};
    if (root.has("level") && kind != "cone") fail(root.require("level"), "'level' only applies to kind 'cone'");
    s.expected = read_expected(root);
    s.source.toml = text;
    return s;
  } catch (const InputError& e) {
    throw InputError(origin + ": " + e.what());
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_toml(buf.str(), path);
}

}  // namespace seshadri
