#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "seshadri/certificate.hpp"
#include "seshadri/oracle.hpp"

namespace py = pybind11;
using namespace seshadri;

namespace {

py::object fraction(const Rational& r) { return py::module_::import("fractions").attr("Fraction")(to_string(r)); }

py::object maybe_fraction(const std::optional<Rational>& r) { return r ? fraction(*r) : py::none(); }

Rational rational_arg(const py::handle& value) {
  // accepts int, Fraction or a "p/q" string
  return parse_rational(py::str(value).cast<std::string>());
}

Scenario load(const std::string& target, const std::map<std::string, std::string>& params) {
  if (is_builtin(target)) return make_builtin(target, params);
  if (!params.empty()) throw InputError("parameters only apply to built-in scenarios");
  if (target.ends_with(".toml") || std::filesystem::exists(target)) return load_scenario_file(target);
  throw InputError("unknown scenario '" + target + "'");
}

py::dict run(const std::string& target, const py::object& level, const std::map<std::string, std::string>& params) {
  const Scenario s = load(target, params);
  RunOptions opts;
  if (!level.is_none()) opts.level = rational_arg(level);
  const ScenarioResult r = [&] {
    py::gil_scoped_release release;
    return run_scenario(s, opts);
  }();
  py::dict out;
  out["id"] = r.scenario.id;
  out["title"] = r.scenario.title;
  out["kind"] = kind_name(r.scenario.task);
  out["passed"] = r.passed();
  out["certified"] = r.certified;
  out["lower"] = maybe_fraction(r.lower);
  out["upper"] = maybe_fraction(r.upper);
  out["exact"] = r.exact();
  out["failures"] = r.failures;
  out["mismatches"] = r.mismatches;
  out["notes"] = r.notes;
  out["certificate"] = write_certificate(r);
  return out;
}

py::dict verify(const std::string& text) {
  const VerifyReport r = verify_certificate(text);
  static const char* names[] = {"pass", "result_failed", "malformed", "mismatch"};
  py::dict out;
  out["outcome"] = names[static_cast<int>(r.outcome)];
  out["exit_code"] = r.exit_code();
  out["scenarios"] = r.scenarios;
  out["message"] = r.message;
  return out;
}

py::dict oracle(const std::string& target, std::int64_t max_degree, const std::map<std::string, std::string>& params) {
  const Scenario s = load(target, params);
  const OracleResult o = [&] {
    py::gil_scoped_release release;
    return brute_force_oracle(s, max_degree);
  }();
  py::dict out;
  out["scenario"] = o.scenario;
  out["max_degree"] = o.max_degree;
  out["points_checked"] = o.points_checked;
  out["min_ratio"] = fraction(o.min_ratio);
  out["argmin"] = o.argmin;
  out["csv"] = oracle_csv(o);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified Seshadri constant bounds for vector bundles";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  m.def("list_scenarios", [] {
    py::list out;
    for (const auto& e : builtin_scenarios()) {
      py::dict d;
      d["id"] = e.id;
      d["title"] = e.title;
      d["expected"] = e.expected;
      d["parameters"] = e.parameters;
      out.append(d);
    }
    return out;
  });
  m.def("run", &run, py::arg("target"), py::arg("level") = py::none(),
        py::arg("params") = std::map<std::string, std::string>{},
        "Run a built-in scenario or a TOML file; returns the result and its certificate.");
  m.def("verify", &verify, py::arg("certificate"), "Replay a JSON certificate.");
  m.def("oracle", &oracle, py::arg("target"), py::arg("max_degree"),
        py::arg("params") = std::map<std::string, std::string>{}, "Brute-force cross-check of a cone scenario.");
  m.def(
      "hirzebruch_intersection",
      [](int e, std::vector<std::int64_t> x, std::vector<std::int64_t> y) {
        const auto f = AmbientSpace::hirzebruch(e);
        return intersect(DivisorClass(f, std::move(x)), DivisorClass(f, std::move(y)));
      },
      py::arg("e"), py::arg("x"), py::arg("y"), "(a s + b f).(c s + d f) on F_e.");
  m.def(
      "hacon_epsilon",
      [](const std::vector<std::int64_t>& degrees, const std::vector<std::int64_t>& ranks) {
        return fraction(hacon_epsilon(degrees, ranks));
      },
      py::arg("degrees"), py::arg("ranks") = std::vector<std::int64_t>{},
      "Seshadri constant of an ample bundle on a smooth curve from its graded pieces.");
  m.attr("__version__") = SESHADRI_VERSION;
}
