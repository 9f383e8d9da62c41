#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cachealloc/model.hpp"

namespace cachealloc {

// Raised when the adaptive quadrature cannot reach its tolerance; carries the
// residual error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

struct UspBreakdown {
  double p_wireless = 0.0;  // rate threshold met over fading and placement
  double p_backhaul = 0.0;  // backhaul slot granted given a cache miss
  double hit_ratio = 0.0;   // request served from cache
  double p_network = 0.0;   // hit_ratio + (1 - hit_ratio) * p_backhaul
  double p_user = 0.0;      // p_wireless * p_network
};

double zipf_pmf(const PopularityModel& pop, long long rank);

// Partial popularity mass of the cache_files most popular files.
double hit_ratio_exact(const PopularityModel& pop, long long cache_files);

// Continuous power-law approximation of the hit ratio; accepts fractional
// sizes so it can be inverted in closed form. 0 for sizes <= 1, 1 at the
// full library.
double hit_ratio_approx(const PopularityModel& pop, double cache_files);

// Probability that a user's share of the band sustains the rate target,
// averaged over uniform-in-area placement and unit-mean exponential fading.
double wireless_success(const RadioParams& radio, int users);

// Probability that the target user wins one of `slots` backhaul units when
// each of the other users misses its cache independently with probability
// 1 - hit_ratio and ties are served uniformly at random.
double backhaul_success(int users, long long slots, double hit_ratio);

double network_support(double hit_ratio, double p_backhaul);

UspBreakdown usp_compose(double p_wireless, double hit_ratio,
                         double p_backhaul);

UspBreakdown usp_exact(const CellSpec& cell, const PopularityModel& pop);

// p_wireless * min(1, approx hit ratio + slots/users).
double usp_approx_parts(double p_wireless, const PopularityModel& pop,
                        double cache_files, long long slots, int users);
double usp_approx(const CellSpec& cell, const PopularityModel& pop);

// Closed-form smallest (fractional) cache size meeting the USP target theta,
// clamped to [0, library_size]. nullopt when theta exceeds the wireless
// ceiling, i.e. no cache suffices.
std::optional<double> min_cache_closed_form(double theta, double p_wireless,
                                            long long slots, int users,
                                            const PopularityModel& pop);

}  // namespace cachealloc
