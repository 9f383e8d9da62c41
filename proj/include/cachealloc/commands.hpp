#pragma once

#include <iosfwd>

#include "cachealloc/config.hpp"
#include "cachealloc/model.hpp"

namespace cachealloc {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kAllInfeasible = 3,
  kValidationFailed = 4,
};

// Standardized deviation of a Monte Carlo estimate from its analytic value;
// 0 when they agree exactly, +/-inf when the estimator has zero spread but
// disagrees.
double z_score(double analytic, const TrialEstimate& est);

// CSV goes to `out`; a short human-readable summary goes to `log`.
int cmd_usp(const ScenarioConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_tradeoff(const ScenarioConfig& cfg, std::ostream& out,
                 std::ostream& log);

enum class SweepAxis { kFiles, kGamma };
int cmd_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::ostream& out,
              std::ostream& log);

int cmd_allocate(const ScenarioConfig& cfg, std::ostream& out,
                 std::ostream& log);
int cmd_validate(const ScenarioConfig& cfg, std::ostream& out,
                 std::ostream& log);

}  // namespace cachealloc
