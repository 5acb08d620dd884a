#include "seshadri/oracle.hpp"

#include <algorithm>
#include <limits>

namespace seshadri {

namespace {

using Row = std::vector<std::int64_t>;

std::int64_t to_i64(const Integer& v, const std::string& what) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max()) {
    throw DomainError(what + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

// Integer multiple of a homogeneous constraint, same sign pattern.
Row integer_constraint(const LinearForm& f, std::size_t dim) {
  Integer l = 1;
  for (std::size_t i = 0; i < dim; ++i) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(f[i]));
  Row row(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const Rational c = f[i] * l;
    row[i] = to_i64(boost::multiprecision::numerator(c), "constraint coefficient");
  }
  return row;
}

Row integer_form(const LinearForm& f, std::size_t dim, const std::string& what) {
  Row row(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (boost::multiprecision::denominator(f[i]) != 1) throw DomainError(what + " has a non-integer coefficient");
    row[i] = to_i64(boost::multiprecision::numerator(f[i]), what);
  }
  return row;
}

[[noreturn]] void overflow() { throw DomainError("oracle value overflows 64 bits; lower --max-degree"); }

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t eval(const Row& row, const Row& point) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (__builtin_add_overflow(s, mul(row[i], point[i]), &s)) overflow();
  }
  return s;
}

struct Search {
  std::size_t dim = 0;
  std::size_t unit = 0;
  std::size_t mx = 0;
  std::vector<std::size_t> order;  // enumerated variables: class, then marked
  std::vector<std::int64_t> cap;   // per position in `order`
  std::vector<bool> is_class;
  std::int64_t max_degree = 0;
  std::vector<Row> constraints;  // base cone
  std::vector<Row> probes;       // applicable probe bounds P.C
  std::vector<Row> stages;

  std::uint64_t checked = 0;
  bool have_best = false;
  std::int64_t best_num = 0, best_den = 1;
  Row best_point;

  // Constraints that can only decrease once position k is fixed.
  std::vector<std::vector<std::size_t>> closed_after;

  void prepare() {
    closed_after.assign(order.size(), {});
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      for (std::size_t k = 0; k < order.size(); ++k) {
        bool closed = true;
        for (std::size_t later = k + 1; later < order.size(); ++later) {
          if (constraints[c][order[later]] > 0) closed = false;
        }
        if (closed) closed_after[k].push_back(c);
      }
    }
  }

  void run(Row& point, std::size_t k, std::int64_t class_sum) {
    if (k == order.size()) {
      visit(point);
      return;
    }
    const std::size_t v = order[k];
    std::int64_t hi = cap[k];
    if (is_class[k]) hi = std::min(hi, max_degree - class_sum);
    for (std::int64_t value = 0; value <= hi; ++value) {
      point[v] = value;
      bool ok = true;
      bool stop = false;
      for (std::size_t c : closed_after[k]) {
        if (eval(constraints[c], point) < 0) {
          ok = false;
          // later values of v only lower this constraint further
          if (constraints[c][v] <= 0) stop = true;
        }
      }
      if (ok) run(point, k + 1, class_sum + (is_class[k] ? value : 0));
      if (stop) break;
    }
    point[v] = 0;
  }

  void visit(Row& point) {
    for (const auto& c : constraints) {
      if (eval(c, point) < 0) return;
    }
    std::int64_t bound = std::numeric_limits<std::int64_t>::max();
    for (const auto& p : probes) bound = std::min(bound, eval(p, point));
    std::int64_t s = std::numeric_limits<std::int64_t>::max();
    for (const auto& st : stages) s = std::min(s, eval(st, point));
    for (std::int64_t m = 1; m <= bound; ++m) {
      ++checked;
      // s / m < best_num / best_den
      if (!have_best || mul(s, best_den) < mul(best_num, m)) {
        have_best = true;
        best_num = s;
        best_den = m;
        best_point = point;
        best_point[mx] = m;
      }
    }
  }
};

}  // namespace

OracleResult brute_force_oracle(const Scenario& scenario, std::int64_t max_degree) {
  const auto* task = std::get_if<ConeTask>(&scenario.task);
  if (task == nullptr) throw InputError("oracle needs a cone scenario; '" + scenario.id + "' is " + kind_name(scenario.task));
  if (max_degree < 1) throw InputError("--max-degree must be >= 1");

  const ConeModel model = build_cone_model(task->bundle, task->setup);
  if (!model.mult_bounded) throw DomainError("no probe bounds mult_x C on the cone; the brute force would not end");
  const ClassCone& cone = model.curve.cone;

  Search s;
  s.dim = cone.dimension();
  s.unit = *cone.unit();
  s.mx = *model.curve.mult_var;
  s.max_degree = max_degree;
  for (std::size_t v : model.curve.class_vars) {
    s.order.push_back(v);
    s.cap.push_back(max_degree);
    s.is_class.push_back(true);
  }
  for (std::size_t v : model.curve.marked_vars) {
    s.order.push_back(v);
    s.cap.push_back(2 * max_degree);
    s.is_class.push_back(false);
  }
  for (const auto& c : model.base_cone.constraint_forms()) s.constraints.push_back(integer_constraint(c, s.dim));
  for (const auto& p : model.probes) {
    if (p.probe.applicable) s.probes.push_back(integer_form(p.probe.bound, s.dim, "probe " + p.probe.label));
  }
  for (const auto& st : model.restriction.stages) s.stages.push_back(integer_form(st, s.dim, "restriction stage"));
  s.prepare();

  OracleResult out;
  out.scenario = scenario.id;
  out.max_degree = max_degree;

  bool have = false;
  for (const auto& curve : task->setup.special_curves) {
    ++out.points_checked;
    const Rational ratio = check_special_curve(task->bundle, curve, 0).ratio;
    if (!have || ratio < out.min_ratio) {
      have = true;
      out.min_ratio = ratio;
      out.argmin = curve.label;
    }
  }

  Row point(s.dim, 0);
  point[s.unit] = 1;
  s.run(point, 0, 0);
  out.points_checked += s.checked;
  if (s.have_best) {
    const Rational ratio(s.best_num, s.best_den);
    if (!have || ratio < out.min_ratio) {
      have = true;
      out.min_ratio = ratio;
      out.argmin.clear();
      for (std::size_t i = 0; i < s.dim; ++i) {
        if (i == s.unit) continue;
        if (!out.argmin.empty()) out.argmin += ";";
        out.argmin += cone.variables()[i] + "=" + std::to_string(s.best_point[i]);
      }
    }
  }
  if (!have) throw DomainError("no curve class with degree <= " + std::to_string(max_degree));
  return out;
}

std::string oracle_csv(const OracleResult& r) {
  return "scenario,max_degree,points_checked,min_ratio,argmin\n" + r.scenario + "," + std::to_string(r.max_degree) +
         "," + std::to_string(r.points_checked) + "," + to_string(r.min_ratio) + "," + r.argmin + "\n";
}

}  // namespace seshadri
