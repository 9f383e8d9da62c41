#pragma once

#include <cstdint>

#include "cachealloc/model.hpp"

namespace cachealloc {

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = hardware concurrency; results identical regardless
};

// Each estimate is a pure function of (parameters, trials, seed): every trial
// draws from its own counter-based substream, and workers only partition the
// trial range, so serial and parallel runs agree bit for bit.

TrialEstimate simulate_wireless(const RadioParams& radio, int users,
                                const SimConfig& sim);

TrialEstimate simulate_backhaul(int users, long long slots, double hit_ratio,
                                const SimConfig& sim);

TrialEstimate simulate_usp(const CellSpec& cell, const PopularityModel& pop,
                           const SimConfig& sim);

}  // namespace cachealloc
