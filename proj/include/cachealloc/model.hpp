#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace cachealloc {

// Radio front end of one cell. Units are spelled in the field names.
struct RadioParams {
  double radius_m = 0.0;         // cell radius R
  double pathloss_exp = 0.0;     // alpha >= 2
  double noise_dbm = 0.0;        // receiver noise power, dBm
  double bandwidth_hz = 0.0;     // downlink band B0 shared by the users
  double tx_power_w = 0.0;       // transmit power toward one user
  double rate_target_bps = 0.0;  // per-user rate threshold r0 (0 = no floor)

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Zipf file popularity over a finite library. The normalizing sum and the
// cumulative table are computed once at construction; copies share them.
class PopularityModel {
 public:
  PopularityModel(long long library_size, double zipf_exp);

  long long library_size() const { return library_size_; }
  double zipf_exp() const { return zipf_exp_; }
  // sum over the whole library of rank^(-zipf_exp)
  double normalizer() const { return normalizer_; }

  // P[requested rank <= r]; cum(0) == 0 and cum(library_size) == 1 exactly.
  double cum(long long rank) const {
    return (*cum_)[static_cast<std::size_t>(rank)];
  }
  const std::vector<double>& cum_table() const { return *cum_; }

 private:
  long long library_size_ = 1;
  double zipf_exp_ = 0.0;
  double normalizer_ = 1.0;
  std::shared_ptr<const std::vector<double>> cum_;
};

struct CellSpec {
  RadioParams radio;
  int users = 0;              // U >= 1, all active
  double backhaul_bps = 0.0;  // cell backhaul capacity c_B
  long long cache_files = 0;  // cache size s in whole files

  void validate() const;
};

// One Monte Carlo run.
struct TrialEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sqrt(mean*(1-mean)/trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct AllocationResult {
  std::vector<long long> cache_files;  // per-cell allocation s_j
  double achieved_rho = 0.0;           // min over cells of exact USP
  long long total_used = 0;
  bool saturated = false;  // every cell reaches network support 1
};

double dbm_to_watts(double dbm);

// Backhaul capacity in whole per-user rate units: floor(c_B / r0).
long long normalized_backhaul(double backhaul_bps, double rate_target_bps);

// Cache capacity in whole files: floor(cache_bits / file_length_bits).
long long normalized_cache(double cache_bits, double file_length_bits);

}  // namespace cachealloc
