#pragma once

// Invariant suites behind `mpfock verify`. Each suite returns one row per
// check; only gating rows decide the exit status, report rows carry
// regression data and known discrepancies.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpfock/fock.hpp"

namespace mpfock {

enum class Suite { fock, bch, generators, bargmann, wave, all };

std::optional<Suite> parse_suite(std::string_view name);
std::string to_string(Suite s);

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool gating = true;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

SuiteReport run_suite(Suite suite, const TruncationConfig& cfg);

}  // namespace mpfock
