#include <doctest.h>

#include <fstream>
#include <future>

#include <nlohmann/json.hpp>

#include "seshadri/certificate.hpp"

using namespace seshadri;
using json = nlohmann::ordered_json;

namespace {

std::string scenario_path(const std::string& name) { return std::string(SESHADRI_SCENARIO_DIR) + "/" + name; }

std::string certificate_for(const Scenario& s, const RunOptions& opts = {}) {
  return write_certificate(run_scenario(s, opts));
}

std::string certificate_for(const std::string& id) { return certificate_for(make_builtin(id)); }

VerifyReport verify_json(const json& j) { return verify_certificate(j.dump()); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::vector<Scenario> corpus() {
  std::vector<Scenario> out;
  for (const auto& e : builtin_scenarios()) out.push_back(make_builtin(e.id));
  for (int n = 2; n <= 6; ++n) out.push_back(make_builtin("tangent-Pn", {{"n", std::to_string(n)}}));
  for (const char* id : {"ex-3.4", "ex-3.5", "ex-3.6", "ex-3.7-null-correlation"}) {
    out.push_back(make_builtin(id, {{"k", "3"}}));
  }
  out.push_back(make_builtin("thm-4.1-small", {{"delta", "1/1000"}}));
  for (const char* f : {"f1-extension.toml", "five-points-e3.toml", "f3-split.toml"}) {
    out.push_back(load_scenario_file(scenario_path(f)));
  }
  return out;
}

// First nonzero multiplier of the first nonneg subcone.
json& some_multiplier(json& cert) {
  for (auto& sub : cert["evidence"]["cone"]["target"]["subcones"]) {
    if (sub["status"] != "nonneg") continue;
    for (auto& m : sub["multipliers"]) {
      if (m["num"].get<std::int64_t>() != 0) return m;
    }
  }
  throw std::runtime_error("certificate without multipliers");
}

}  // namespace

TEST_CASE("every emitted certificate replays") {
  for (const auto& s : corpus()) {
    CAPTURE(s.id);
    const auto report = verify_certificate(certificate_for(s));
    CHECK(report.outcome == VerifyOutcome::pass);
    CHECK(report.exit_code() == 0);
    CHECK(report.message.empty());
    REQUIRE(report.scenarios.size() == 1);
    CHECK(report.scenarios[0] == s.id);
  }
}

TEST_CASE("certificates are byte-identical across runs and threads") {
  for (const auto& s : corpus()) {
    CAPTURE(s.id);
    const auto first = certificate_for(s);
    auto other = std::async(std::launch::async, [&] { return certificate_for(s); });
    CHECK(first == certificate_for(s));
    CHECK(first == other.get());
    CHECK(first.back() == '\n');
  }
}

TEST_CASE("canonical layout") {
  const auto text = certificate_for("hirzebruch-case-2");
  CHECK(text.rfind("{\n  \"format\": \"seshadri-certificate\",\n  \"version\": 1,\n", 0) == 0);
  CHECK(contains(text, "\"lower\": {\"num\":1,\"den\":1},"));
  const auto j = json::parse(text);
  CHECK(j["result"]["certified"] == true);
  CHECK(j["scenario"]["source"]["builtin"] == "hirzebruch-case-2");
  // the field order is fixed
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"format", "version", "scenario", "options", "result", "expected", "evidence"});
}

TEST_CASE("certificate sets") {
  std::vector<ScenarioResult> results;
  for (const auto& e : builtin_scenarios()) results.push_back(run_scenario(make_builtin(e.id)));
  const auto text = write_certificate_set(results);
  const auto report = verify_certificate(text);
  CHECK(report.exit_code() == 0);
  REQUIRE(report.scenarios.size() == results.size());
  for (std::size_t i = 0; i < results.size(); ++i) CHECK(report.scenarios[i] == results[i].scenario.id);
  CHECK(json::parse(text)["format"] == "seshadri-certificate-set");
}

TEST_CASE("tampered certificates are rejected") {
  const auto original = json::parse(certificate_for("hirzebruch-case-2"));

  SUBCASE("a perturbed multiplier names the failing identity") {
    auto cert = original;
    auto& m = some_multiplier(cert);
    m["num"] = m["num"].get<std::int64_t>() + 1;
    const auto r = verify_json(cert);
    CHECK(r.outcome == VerifyOutcome::mismatch);
    CHECK(r.exit_code() == 3);
    CHECK(contains(r.message, "identity"));
  }
  SUBCASE("a negative multiplier") {
    auto cert = original;
    auto& m = some_multiplier(cert);
    m["num"] = -m["num"].get<std::int64_t>();
    CHECK(verify_json(cert).exit_code() == 3);
  }
  SUBCASE("a dropped subcone breaks coverage") {
    auto cert = original;
    auto& subs = cert["evidence"]["cone"]["target"]["subcones"];
    REQUIRE(subs.size() == 2);
    subs.erase(subs.begin());
    const auto r = verify_json(cert);
    CHECK(r.exit_code() == 3);
    CHECK(contains(r.message, "lies in no certified subcone"));
  }
  SUBCASE("a changed result") {
    auto cert = original;
    cert["result"]["lower"]["num"] = 2;
    const auto r = verify_json(cert);
    CHECK(r.exit_code() == 3);
    CHECK(contains(r.message, "result"));
  }
  SUBCASE("a changed ray") {
    auto cert = original;
    auto& ray = cert["evidence"]["cone"]["rays"][0];
    ray[0]["num"] = ray[0]["num"].get<std::int64_t>() + 5;
    CHECK(verify_json(cert).exit_code() == 3);
  }
  SUBCASE("a changed probe proof") {
    auto cert = original;
    bool changed = false;
    for (auto& sub : cert["evidence"]["cone"]["probes"][0]["proof"]["subcones"]) {
      for (auto& m : sub["multipliers"]) {
        if (!changed && m["num"].get<std::int64_t>() != 0) {
          m["num"] = m["num"].get<std::int64_t>() * 3;
          changed = true;
        }
      }
    }
    REQUIRE(changed);
    CHECK(verify_json(cert).exit_code() == 3);
  }
  SUBCASE("a changed expected value") {
    auto cert = original;
    cert["expected"]["upper"]["num"] = 7;
    CHECK(verify_json(cert).exit_code() == 3);
  }
}

TEST_CASE("tampering outside cone evidence") {
  auto red = json::parse(certificate_for("thm-4.2-reduction"));
  red["result"]["lower"] = json{{"num", 2}, {"den", 1}};
  CHECK(verify_json(red).exit_code() == 3);

  auto file = json::parse(certificate_for(load_scenario_file(scenario_path("f3-split.toml"))));
  std::string toml = file["scenario"]["source"]["toml"];
  const auto at = toml.find("[2, 7]");
  REQUIRE(at != std::string::npos);
  toml.replace(at, 6, "[2, 9]");
  file["scenario"]["source"]["toml"] = toml;
  CHECK(verify_json(file).exit_code() == 3);
}

TEST_CASE("failed runs and malformed input") {
  RunOptions opts;
  opts.level = Rational(3, 2);
  const auto failed = verify_certificate(certificate_for(make_builtin("hirzebruch-case-1"), opts));
  CHECK(failed.outcome == VerifyOutcome::result_failed);
  CHECK(failed.exit_code() == 1);

  CHECK(verify_certificate("not json").exit_code() == 2);
  CHECK(verify_certificate("{}").exit_code() == 2);
  CHECK(verify_certificate("[1, 2]").exit_code() == 2);
  auto cert = json::parse(certificate_for("hirzebruch-case-2"));
  cert["scenario"]["source"]["builtin"] = "no-such-scenario";
  CHECK(verify_json(cert).exit_code() == 2);
  cert = json::parse(certificate_for("hirzebruch-case-2"));
  cert["version"] = 99;
  CHECK(verify_json(cert).exit_code() == 2);
  cert = json::parse(certificate_for("hirzebruch-case-2"));
  cert["evidence"]["cone"]["target"]["subcones"][0]["multipliers"][0] = json{{"num", 1}, {"den", 0}};
  CHECK(verify_json(cert).exit_code() == 2);
  CHECK(verify_certificate_file("/nonexistent/cert.json").exit_code() == 2);
}

TEST_CASE("certificate files") {
  const std::string path = "test_certificate_case4.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << certificate_for("hirzebruch-case-4");
  }
  CHECK(verify_certificate_file(path).exit_code() == 0);
  std::remove(path.c_str());
}
