#pragma once

// The acceptance suite: exact regressions on P(1,1,2), oracle and property
// checks over the regression corpus, and the spherical catalogue.

#include <ostream>
#include <string>
#include <vector>

namespace eqloc {

struct CriterionResult {
  enum class Status { Pass, Fail, Excluded };
  std::string id;
  std::string title;
  Status status = Status::Fail;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no runtime bound
};

/// Runs every criterion; progress lines go to `log` when given.
std::vector<CriterionResult> run_acceptance(std::ostream* log = nullptr);

/// One line per criterion: "[PASS] id title: detail".  Timings are printed
/// only on request so the default output is byte-deterministic.
void print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out, bool timings = false);

/// Criteria whose printed target disagrees with exact computation, with the
/// outcome the suite is expected to report for them.
struct KnownDiscrepancy {
  std::string id;
  std::string reason;
};
const std::vector<KnownDiscrepancy>& known_discrepancies();

/// True when every criterion passes or is excluded, apart from the known
/// discrepancies, which must fail.
bool acceptance_as_expected(const std::vector<CriterionResult>& results);

}  // namespace eqloc
