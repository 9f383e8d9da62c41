#include "cachealloc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cachealloc/rng.hpp"

namespace cachealloc {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

int resolve_workers(int workers, std::uint64_t trials) {
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
  }
  // keep chunks large enough that threads pay for themselves
  const std::uint64_t max_useful = std::max<std::uint64_t>(1, trials / 4096);
  return static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), max_useful));
}

template <class TrialFn>
TrialEstimate run_trials(std::uint64_t trials, std::uint64_t seed, int workers,
                         const TrialFn& fn) {
  require(trials >= 1, "trials: must be >= 1");
  const int n = resolve_workers(workers, trials);
  std::uint64_t successes = 0;
  if (n <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      TrialRng rng(seed, t);
      if (fn(rng)) ++successes;
    }
  } else {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    const std::uint64_t chunk = (trials + n - 1) / n;
    for (int i = 0; i < n; ++i) {
      pool.emplace_back([&, i] {
        const std::uint64_t lo = chunk * static_cast<std::uint64_t>(i);
        const std::uint64_t hi = std::min(trials, lo + chunk);
        std::uint64_t c = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
          TrialRng rng(seed, t);
          if (fn(rng)) ++c;
        }
        counts[static_cast<std::size_t>(i)] = c;
      });
    }
    for (auto& th : pool) th.join();
    for (std::uint64_t c : counts) successes += c;  // order-insensitive sum
  }
  TrialEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.mean = static_cast<double>(successes) / static_cast<double>(trials);
  est.std_err =
      std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  return est;
}

struct WirelessDraw {
  double radius_m, pathloss_exp, per_user_bw_hz, noise_w, tx_power_w,
      rate_target_bps;

  bool operator()(TrialRng& rng) const {
    const double x = radius_m * std::sqrt(rng.next_unit());  // area-uniform
    const double g = rng.next_exp();
    const double snr = tx_power_w * g * std::pow(x, -pathloss_exp) /
                       (per_user_bw_hz * noise_w);
    const double rate = per_user_bw_hz * std::log2(1.0 + snr);
    return rate >= rate_target_bps;
  }
};

// Target plus `missing` others contend for `slots` backhaul units; winners
// are drawn uniformly one at a time without replacement. The pool is
// exchangeable, so only the target's membership needs tracking (label 0).
bool contention_grants_target(TrialRng& rng, long long missing,
                              long long slots) {
  if (slots > missing) return true;  // enough units for every contender
  std::uint64_t remaining = static_cast<std::uint64_t>(missing) + 1;
  for (long long k = 0; k < slots; ++k) {
    if (rng.next_below(remaining) == 0) return true;
    --remaining;
  }
  return false;
}

long long draw_other_misses(TrialRng& rng, int users, double hit_ratio) {
  long long missing = 0;
  for (int i = 0; i + 1 < users; ++i)
    if (rng.next_unit() >= hit_ratio) ++missing;
  return missing;
}

}  // namespace

TrialEstimate simulate_wireless(const RadioParams& radio, int users,
                                const SimConfig& sim) {
  radio.validate();
  require(users >= 1, "users: must be >= 1");
  const WirelessDraw draw{radio.radius_m,
                          radio.pathloss_exp,
                          radio.bandwidth_hz / users,
                          dbm_to_watts(radio.noise_dbm),
                          radio.tx_power_w,
                          radio.rate_target_bps};
  return run_trials(sim.trials, sim.seed, sim.workers, draw);
}

TrialEstimate simulate_backhaul(int users, long long slots, double hit_ratio,
                                const SimConfig& sim) {
  require(users >= 1, "users: must be >= 1");
  require(slots >= 0, "slots: must be >= 0");
  require(std::isfinite(hit_ratio) && hit_ratio >= 0.0 && hit_ratio <= 1.0,
          "hit_ratio: out of [0, 1]");
  auto trial = [users, slots, hit_ratio](TrialRng& rng) {
    const long long missing = draw_other_misses(rng, users, hit_ratio);
    return contention_grants_target(rng, missing, slots);
  };
  return run_trials(sim.trials, sim.seed, sim.workers, trial);
}

TrialEstimate simulate_usp(const CellSpec& cell, const PopularityModel& pop,
                           const SimConfig& sim) {
  cell.validate();
  require(cell.cache_files <= pop.library_size(),
          "cache_files: exceeds library_size");
  require(cell.radio.rate_target_bps > 0.0,
          "rate_target_bps: must be > 0 to normalize backhaul");
  const WirelessDraw draw{cell.radio.radius_m,
                          cell.radio.pathloss_exp,
                          cell.radio.bandwidth_hz / cell.users,
                          dbm_to_watts(cell.radio.noise_dbm),
                          cell.radio.tx_power_w,
                          cell.radio.rate_target_bps};
  const long long slots =
      normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
  const double hit_ratio = pop.cum(cell.cache_files);
  const std::vector<double>& cum = pop.cum_table();
  const int users = cell.users;
  const long long cache = cell.cache_files;
  auto trial = [&draw, &cum, cache, users, slots, hit_ratio](TrialRng& rng) {
    // wireless draws come first so a full-cache run reproduces
    // simulate_wireless outcome for outcome
    const bool wireless_ok = draw(rng);
    // requested rank by inverse CDF over the cumulative table
    const double u = rng.next_unit();
    const auto it = std::upper_bound(cum.begin() + 1, cum.end(), u);
    const long long rank = it - cum.begin();
    bool network_ok = rank <= cache;
    if (!network_ok) {
      const long long missing = draw_other_misses(rng, users, hit_ratio);
      network_ok = contention_grants_target(rng, missing, slots);
    }
    return wireless_ok && network_ok;
  };
  return run_trials(sim.trials, sim.seed, sim.workers, trial);
}

}  // namespace cachealloc
