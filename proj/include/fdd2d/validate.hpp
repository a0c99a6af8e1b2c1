#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdd2d/config.hpp"

namespace fdd2d {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // |delta| or the statistic being bounded
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  /// One "PASS|FAIL name measured=... tol=... detail" line per check.
  std::string to_text() const;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  double area_km2 = 100.0;
  int realizations = 200;
  int probes = 50;
  int threads = 1;
};

/// Closed forms against quadrature of their defining integrals, the arctan
/// interference form against the 2F1 form, and the analytic engine against the
/// simulator (mode probabilities, SINR outage, distance distributions).
ValidationReport validate(const NetworkConfig& cfg, const ValidationOptions& opt = {});

}  // namespace fdd2d
