// seshadri: command-line front end.
//
//   seshadri list
//   seshadri run <id|file>... [--level p/q] [--json out.json] [--jobs N] [--n N] [--k K] [--delta p/q]
//   seshadri verify <cert.json>
//   seshadri oracle <id|file> --max-degree N
//
// Exit codes: 0 pass, 1 certification failure, 2 input error, 3 replay
// mismatch. SESHADRI_NO_COLOR (or a non-terminal stdout) disables ANSI.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "seshadri/certificate.hpp"
#include "seshadri/oracle.hpp"
#include "seshadri/scenario.hpp"

namespace {

using namespace seshadri;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Style {
  bool color = false;
  std::string wrap(const char* code, const std::string& text) const {
    return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
  }
  std::string pass(const std::string& t) const { return wrap("32", t); }
  std::string fail(const std::string& t) const { return wrap("31", t); }
  std::string dim(const std::string& t) const { return wrap("2", t); }
};

Style detect_style() {
  Style s;
  s.color = std::getenv("SESHADRI_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) == 1;
  return s;
}

// Built-in parameters given as flags or --param name=value.
struct ParamFlags {
  std::optional<std::string> n, k, delta, r, d;
  std::vector<std::string> extra;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--n", n, "dimension for tangent-Pn");
    cmd.add_option("--k", k, "twist for ex-3.4 to ex-3.7");
    cmd.add_option("--delta", delta, "target bound for thm-4.1-small, as p/q");
    cmd.add_option("--r", r, "rank for thm-4.1-small");
    cmd.add_option("--d", d, "degree of det Q1 for thm-4.2-reduction");
    cmd.add_option("--param", extra, "other built-in parameter, name=value")->take_all();
  }

  std::map<std::string, std::string> collect() const {
    std::map<std::string, std::string> out;
    auto put = [&](const char* name, const std::optional<std::string>& v) {
      if (v) out[name] = *v;
    };
    put("n", n);
    put("k", k);
    put("delta", delta);
    put("r", r);
    put("d", d);
    for (const auto& kv : extra) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + kv + "'");
      out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
  }
};

bool looks_like_file(const std::string& target) {
  return target.size() > 5 && target.substr(target.size() - 5) == ".toml";
}

Scenario load_target(const std::string& target, const std::map<std::string, std::string>& params) {
  if (looks_like_file(target) || (!is_builtin(target) && std::filesystem::exists(target))) {
    if (!params.empty()) throw InputError(target + ": parameters apply to built-in scenarios only");
    return load_scenario_file(target);
  }
  return make_builtin(target, params);
}

std::string describe_interval(const ScenarioResult& r) {
  if (r.lower && r.upper) return "eps in [" + to_string(*r.lower) + ", " + to_string(*r.upper) + "]";
  if (r.lower) return "eps >= " + to_string(*r.lower);
  if (r.upper) return "eps <= " + to_string(*r.upper);
  if (r.quotient_degree) return "quotient of degree " + std::to_string(*r.quotient_degree);
  return "no bound";
}

std::string report(const ScenarioResult& r, const Style& style) {
  std::ostringstream out;
  const std::string verdict = r.passed() ? style.pass("PASS") : style.fail("FAIL");
  out << verdict << "  " << r.scenario.id << "  " << describe_interval(r) << (r.exact() ? " (exact)" : "") << "\n";

  if (r.lower_report) {
    const auto& lb = *r.lower_report;
    std::size_t nonneg = 0, vacuous = 0;
    for (const auto& s : lb.cone.subcones) {
      nonneg += s.status == SubconeStatus::nonneg;
      vacuous += s.status == SubconeStatus::vacuous;
    }
    out << "  level " << to_string(r.level) << ": " << lb.cone.subcones.size() << " subcones (" << nonneg
        << " by Farkas multipliers, " << vacuous << " empty), " << lb.special.size() << " special curves"
        << (lb.certified ? ", certified" : ", not certified") << "\n";
    out << "  " << style.dim("target " + lb.model.curve.cone.format(lb.cone.form)) << "\n";
  }
  for (const auto& w : r.witnesses) {
    out << "  witness " << w.curve.label << ": mu_min " << (w.exact ? "= " : "<= ") << to_string(w.slope.upper)
        << ", mult " << w.curve.mult << ", eps <= " << to_string(w.contribution) << " at its points\n";
  }
  if (r.non_nef_stages) {
    out << "  stages on the curve:";
    for (auto d : *r.non_nef_stages) out << " " << d;
    out << "\n";
  }
  if (r.equivariant) {
    out << "  min over invariant lines: " << to_string(r.equivariant->lower) << " (family "
        << r.equivariant->argmin_family << (r.equivariant->exact ? ", uniform splitting" : "") << ")\n";
  }
  if (r.small) {
    out << "  r = " << r.small->r << ": eps <= 1/r = " << to_string(r.small->upper) << " < delta = "
        << to_string(r.small->delta) << "\n";
  }
  if (r.reduction) {
    out << "  eps(det Q1) = " << to_string(r.reduction->epsilon_det_q1) << ", value "
        << to_string(r.reduction->value) << ", floor 1/rank = " << to_string(r.reduction->floor)
        << (r.reduction->floor_applies ? " (applies)" : "") << "\n";
  }
  for (const auto& f : r.failures) out << "  " << style.fail("fail") << ": " << f << "\n";
  for (const auto& m : r.mismatches) out << "  " << style.fail("mismatch") << ": " << m << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// ------------------------------------------------------------------ commands

int cmd_list(const Style& style) {
  std::size_t width = 0;
  for (const auto& e : builtin_scenarios()) width = std::max(width, e.id.size());
  for (const auto& e : builtin_scenarios()) {
    std::string params;
    for (const auto& p : e.parameters) params += (params.empty() ? "" : ", ") + p;
    std::cout << e.id << std::string(width + 2 - e.id.size(), ' ') << e.title << "\n"
              << std::string(width + 2, ' ') << style.dim("expected: " + e.expected +
                                                          (params.empty() ? "" : "; parameters: " + params))
              << "\n";
  }
  return kExitPass;
}

int cmd_run(const std::vector<std::string>& targets, bool all, const std::optional<std::string>& level,
            const std::optional<std::string>& json_path, unsigned jobs, const ParamFlags& flags, const Style& style) {
  std::vector<Scenario> scenarios;
  RunOptions options;
  try {
    if (level) options.level = parse_rational(*level);
    const auto params = flags.collect();
    if (all) {
      for (const auto& e : builtin_scenarios()) scenarios.push_back(make_builtin(e.id));
    }
    for (const auto& t : targets) scenarios.push_back(load_target(t, params));
  } catch (const Error& e) {
    std::cerr << "seshadri: " << e.what() << "\n";
    return kExitInput;
  }
  if (scenarios.empty()) {
    std::cerr << "seshadri: nothing to run; name a scenario, a TOML file, or pass --all\n";
    return kExitInput;
  }
  std::stable_sort(scenarios.begin(), scenarios.end(),
                   [](const Scenario& a, const Scenario& b) { return a.id < b.id; });

  // independent runs; each result lands in its own slot
  std::vector<std::optional<ScenarioResult>> results(scenarios.size());
  std::vector<std::string> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        results[i] = run_scenario(scenarios[i], options);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(scenarios.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool input_error = false;
  bool failed = false;
  std::vector<ScenarioResult> done;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (!results[i]) {
      input_error = true;
      std::cout << style.fail("ERROR") << "  " << scenarios[i].id << "  " << errors[i] << "\n";
      continue;
    }
    std::cout << report(*results[i], style);
    failed |= !results[i]->passed();
    done.push_back(std::move(*results[i]));
  }
  if (json_path && !done.empty()) {
    const std::string text = done.size() == 1 ? write_certificate(done.front()) : write_certificate_set(done);
    if (!write_file(*json_path, text)) {
      std::cerr << "seshadri: cannot write '" << *json_path << "'\n";
      return kExitInput;
    }
  }
  if (input_error) return kExitInput;
  return failed ? kExitFail : kExitPass;
}

int cmd_verify(const std::string& path, const Style& style) {
  const VerifyReport v = verify_certificate_file(path);
  std::string ids;
  for (const auto& id : v.scenarios) ids += (ids.empty() ? "" : ", ") + id;
  if (v.outcome == VerifyOutcome::pass) {
    std::cout << style.pass("PASS") << "  replay matches (" << ids << ")\n";
  } else {
    std::cout << style.fail(v.outcome == VerifyOutcome::result_failed ? "FAIL" : "ERROR") << "  " << v.message
              << "\n";
  }
  return v.exit_code();
}

int cmd_oracle(const std::string& target, std::int64_t max_degree, const ParamFlags& flags) {
  try {
    const Scenario s = load_target(target, flags.collect());
    std::cout << oracle_csv(brute_force_oracle(s, max_degree));
    return kExitPass;
  } catch (const Error& e) {
    std::cerr << "seshadri: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Seshadri constants of vector bundles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("seshadri ") + SESHADRI_VERSION);
  const Style style = detect_style();

  auto* list = app.add_subcommand("list", "list the built-in scenarios");

  auto* run = app.add_subcommand("run", "certify scenarios and compare with their expected values");
  std::vector<std::string> run_targets;
  bool run_all = false;
  std::optional<std::string> level, json_path;
  unsigned jobs = 1;
  ParamFlags run_params;
  run->add_option("targets", run_targets, "built-in ids or TOML scenario files");
  run->add_flag("--all", run_all, "run every built-in scenario");
  run->add_option("--level", level, "level t to certify, as p/q (cone scenarios)");
  run->add_option("--json", json_path, "write the certificate to this file");
  run->add_option("--jobs,-j", jobs, "scenarios run concurrently")->check(CLI::Range(1u, 256u));
  run_params.add_to(*run);

  auto* verify = app.add_subcommand("verify", "replay a JSON certificate");
  std::string cert_path;
  verify->add_option("certificate", cert_path, "certificate file")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-check, printed as CSV");
  std::string oracle_target;
  std::int64_t max_degree = 0;
  ParamFlags oracle_params;
  oracle->add_option("target", oracle_target, "built-in id or TOML scenario file")->required();
  oracle->add_option("--max-degree", max_degree, "bound on the class coordinates")->required();
  oracle_params.add_to(*oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (list->parsed()) return cmd_list(style);
  if (run->parsed()) return cmd_run(run_targets, run_all, level, json_path, jobs, run_params, style);
  if (verify->parsed()) return cmd_verify(cert_path, style);
  if (oracle->parsed()) return cmd_oracle(oracle_target, max_degree, oracle_params);
  return kExitInput;
}
