#pragma once

#include <string>
#include <vector>

#include "seshadri/scenario.hpp"

namespace seshadri {

// Canonical JSON certificate for one run: fixed field order, rationals as
// {"num": n, "den": d}, two-space indentation and a trailing newline. The
// same run always yields the same bytes.
std::string write_certificate(const ScenarioResult& result);

// Several runs in one file, in the given order.
std::string write_certificate_set(const std::vector<ScenarioResult>& results);

enum class VerifyOutcome {
  pass,           // replay matches and the run passed
  result_failed,  // replay matches, but certification failed or differs from the expected values
  malformed,      // not a certificate, or its scenario cannot be rebuilt
  mismatch,       // the replay disagrees with the certificate
};

struct VerifyReport {
  VerifyOutcome outcome = VerifyOutcome::pass;
  std::vector<std::string> scenarios;  // ids, in file order
  std::string message;                 // first failing identity, or the reason for a failed result
  int exit_code() const;               // 0, 1, 2, 3
};

// Independent replay: rebuilds each scenario from its embedded source,
// recombines every Farkas multiplier vector, checks rays, counterexample
// points and branch coverage, re-evaluates special curves and witnesses,
// and compares everything with the file. Nothing is searched for again.
VerifyReport verify_certificate(const std::string& json_text);
VerifyReport verify_certificate_file(const std::string& path);

}  // namespace seshadri
