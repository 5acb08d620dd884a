#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seshadri/certify.hpp"

namespace seshadri {

/// Certify eps >= level over the curve cone, with witnesses for the upper end.
struct ConeTask {
  BundlePresentation bundle;
  CertifySetup setup;
  Rational level = 1;
};

/// Exhibit a curve on which nu^*E has a quotient of negative degree.
struct NotNefTask {
  BundlePresentation bundle;
  CurveDatum curve;
};

/// E = (E (x) L^-1) (x) L with E (x) L^-1 nef and L ample and globally
/// generated. E is the base bundle twisted by k; the nef part is the twist
/// by k - 1 and is declared nef from `min_k` on.
struct AdditivityTask {
  BundlePresentation bundle;  // already twisted by k
  std::int64_t k = 2;
  std::int64_t min_k = 2;
  Rational eps_nef_part = 0;
  Rational eps_line = 1;
  AdditivityFacts facts;
  std::vector<CurveDatum> witnesses;
};

struct EquivariantTask {
  BundlePresentation bundle;
};

struct SmallConstructionTask {
  std::optional<std::int64_t> r;  // empty: smallest r with 1/r < delta
  Rational delta;
};

struct ReductionTask {
  std::int64_t rank = 2;
  std::int64_t rank_q1 = 2;
  DivisorClass det_q1 = DivisorClass(AmbientSpace::projective_plane(), {3});
  std::optional<std::string> hypothesis;
};

using ScenarioTask =
    std::variant<ConeTask, NotNefTask, AdditivityTask, EquivariantTask, SmallConstructionTask, ReductionTask>;

std::string kind_name(const ScenarioTask& task);

/// Values the run must reproduce exactly.
struct Expected {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  std::optional<std::int64_t> quotient_degree;
  std::optional<Rational> floor;
  std::string citation;
};

/// Where a scenario came from, so certificates can be replayed.
struct ScenarioSource {
  std::string builtin;                        // empty for files
  std::map<std::string, std::string> params;  // builtin parameters as given
  std::string toml;                           // the file text for file scenarios
};

struct Scenario {
  std::string id;
  std::string title;
  ScenarioTask task;
  Expected expected;
  ScenarioSource source;
};

// ---------------------------------------------------------------- registry

struct RegistryEntry {
  std::string id;
  std::string title;
  std::string expected;                 // human-readable expected result
  std::vector<std::string> parameters;  // accepted parameter names
};

const std::vector<RegistryEntry>& builtin_scenarios();
bool is_builtin(const std::string& id);

// Builds a built-in scenario. Unknown ids, unknown parameters and malformed
// values raise InputError.
Scenario make_builtin(const std::string& id, const std::map<std::string, std::string>& params = {});

// Parses a TOML scenario; errors carry "line L, column C".
Scenario parse_scenario_toml(const std::string& text, const std::string& origin = "<string>");
Scenario load_scenario_file(const std::string& path);

// Rebuilds the scenario a certificate refers to.
Scenario scenario_from_source(const ScenarioSource& source);

// ------------------------------------------------------------------- runs

struct RunOptions {
  std::optional<Rational> level;  // overrides the scenario level of cone tasks
  // Replaces seshadri_lower_bound for cone tasks; the verifier uses it to
  // rebuild the report from a certificate instead of searching again.
  std::function<LowerBoundReport(const ConeTask& task, const Rational& level)> lower_bound;
};

struct ScenarioResult {
  Scenario scenario;
  Rational level;
  std::optional<Rational> level_option;  // --level as given
  bool level_overridden = false;

  std::optional<Rational> lower;
  std::optional<Rational> upper;
  bool exact() const { return lower && upper && *lower == *upper; }

  bool certified = false;
  std::vector<std::string> failures;    // certification failures
  std::vector<std::string> mismatches;  // differences from the expected values
  std::vector<std::string> notes;
  bool passed() const { return certified && mismatches.empty(); }

  std::optional<LowerBoundReport> lower_report;
  std::vector<WitnessReport> witnesses;
  std::optional<std::vector<std::int64_t>> non_nef_stages;
  std::optional<std::int64_t> quotient_degree;
  std::optional<EquivariantBound> equivariant;
  std::optional<SmallConstruction> small;
  std::optional<ReductionResult> reduction;
};

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// Differences between the result's values and scenario.expected.
std::vector<std::string> compare_expected(const ScenarioResult& result);

}  // namespace seshadri
