#pragma once

#include <cstdint>
#include <string>

#include "seshadri/scenario.hpp"

namespace seshadri {

/// Minimum of mu_min_lb(C) / mult_x(C) over the integer points of a cone
/// scenario's curve cone, with the special curves included.
struct OracleResult {
  std::string scenario;
  std::int64_t max_degree = 0;
  std::uint64_t points_checked = 0;
  Rational min_ratio;
  std::string argmin;  // a special-curve label, or "a=1;b=2;m_x=1"
};

// Enumerates class coordinates with sum <= max_degree, marked-point
// multiplicities up to 2 * max_degree and 1 <= m_x <= the probe bound,
// using 64-bit integer arithmetic only. Ties keep the first point found;
// special curves come first. Throws InputError for non-cone scenarios and
// DomainError when no probe bounds m_x.
OracleResult brute_force_oracle(const Scenario& scenario, std::int64_t max_degree);

// "scenario,max_degree,points_checked,min_ratio,argmin" and one row.
std::string oracle_csv(const OracleResult& result);

}  // namespace seshadri
