#include "cachealloc/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cachealloc {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

void require_finite(double v, const char* field) {
  require(std::isfinite(v), field, "must be finite");
}

}  // namespace

void RadioParams::validate() const {
  require_finite(radius_m, "radius_m");
  require(radius_m > 0.0, "radius_m", "must be > 0");
  require_finite(pathloss_exp, "pathloss_exp");
  require(pathloss_exp >= 2.0, "pathloss_exp", "must be >= 2");
  require_finite(noise_dbm, "noise_dbm");
  require_finite(bandwidth_hz, "bandwidth_hz");
  require(bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
  require_finite(tx_power_w, "tx_power_w");
  require(tx_power_w > 0.0, "tx_power_w", "must be > 0");
  require_finite(rate_target_bps, "rate_target_bps");
  require(rate_target_bps >= 0.0, "rate_target_bps", "must be >= 0");
}

PopularityModel::PopularityModel(long long library_size, double zipf_exp)
    : library_size_(library_size), zipf_exp_(zipf_exp) {
  require(library_size >= 1, "library_size", "must be >= 1");
  require(library_size <= 100000000, "library_size", "must be <= 1e8");
  require_finite(zipf_exp, "zipf_exp");
  require(zipf_exp >= 0.0, "zipf_exp", "must be >= 0");

  const auto n = static_cast<std::size_t>(library_size);
  auto cum = std::make_shared<std::vector<double>>(n + 1, 0.0);
  // long double accumulation keeps the partial sums good to ~1e-15 even for
  // large libraries; each stored entry rounds once
  long double total = 0.0L;
  for (std::size_t f = 1; f <= n; ++f) {
    (*cum)[f] = std::pow(static_cast<double>(f), -zipf_exp);
    total += (*cum)[f];
  }
  normalizer_ = static_cast<double>(total);
  long double run = 0.0L;
  for (std::size_t f = 1; f <= n; ++f) {
    run += (*cum)[f];
    (*cum)[f] = static_cast<double>(run / total);
  }
  (*cum)[n] = 1.0;
  cum_ = std::move(cum);
}

void CellSpec::validate() const {
  radio.validate();
  require(users >= 1, "users", "must be >= 1");
  require_finite(backhaul_bps, "backhaul_bps");
  require(backhaul_bps >= 0.0, "backhaul_bps", "must be >= 0");
  require(cache_files >= 0, "cache_files", "must be >= 0");
}

double dbm_to_watts(double dbm) {
  require_finite(dbm, "dbm");
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

namespace {

long long floor_ratio(double num, double den, const char* num_field,
                      const char* den_field) {
  require_finite(num, num_field);
  require(num >= 0.0, num_field, "must be >= 0");
  require_finite(den, den_field);
  require(den > 0.0, den_field, "must be > 0");
  const double q = std::floor(num / den);
  constexpr double kCap = 1e15;  // far beyond any saturating value
  return static_cast<long long>(q < kCap ? q : kCap);
}

}  // namespace

long long normalized_backhaul(double backhaul_bps, double rate_target_bps) {
  return floor_ratio(backhaul_bps, rate_target_bps, "backhaul_bps",
                     "rate_target_bps");
}

long long normalized_cache(double cache_bits, double file_length_bits) {
  return floor_ratio(cache_bits, file_length_bits, "cache_bits",
                     "file_length_bits");
}

}  // namespace cachealloc
