#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cachealloc/analytic.hpp"
#include "cachealloc/model.hpp"

namespace testsupport {

using namespace cachealloc;

// |a - b| against a relative bound on the larger magnitude.
inline bool close_rel(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

inline bool close_abs(double a, double b, double tol) {
  return std::fabs(a - b) <= tol;
}

// 20 m cell, pathloss 4, -102 dBm noise, 10 MHz band, 1 W, 2 Mbps target.
inline RadioParams baseline_radio() {
  RadioParams r;
  r.radius_m = 20.0;
  r.pathloss_exp = 4.0;
  r.noise_dbm = -102.0;
  r.bandwidth_hz = 1.0e7;
  r.tx_power_w = 1.0;
  r.rate_target_bps = 2.0e6;
  return r;
}

inline CellSpec baseline_cell(int users, double backhaul_bps,
                              long long cache_files) {
  CellSpec c;
  c.radio = baseline_radio();
  c.users = users;
  c.backhaul_bps = backhaul_bps;
  c.cache_files = cache_files;
  return c;
}

// Independent closed form for pathloss exponent exactly 2:
// (1 - exp(-c R^2)) / (c R^2).
inline double wireless_closed_form_alpha2(const RadioParams& radio,
                                          int users) {
  const double noise = dbm_to_watts(radio.noise_dbm);
  const double snr_floor =
      std::exp2(radio.rate_target_bps * users / radio.bandwidth_hz) - 1.0;
  const double c =
      radio.bandwidth_hz * noise * snr_floor / (radio.tx_power_w * users);
  const double a = c * radio.radius_m * radio.radius_m;
  if (a == 0.0) return 1.0;
  return -std::expm1(-a) / a;
}

// Backhaul admission averaged by enumerating every hit/miss pattern of the
// other users (2^(users-1) patterns). Independent of the binomial-sum route.
inline double backhaul_exhaustive(int users, long long slots, double h) {
  const int others = users - 1;
  double total = 0.0;
  for (std::uint64_t bits = 0; bits < (1ull << others); ++bits) {
    double w = 1.0;
    int missing = 0;
    for (int i = 0; i < others; ++i) {
      if ((bits >> i) & 1u) {
        w *= 1.0 - h;
        ++missing;
      } else {
        w *= h;
      }
    }
    total += w * std::min(1.0, static_cast<double>(slots) / (missing + 1));
  }
  return total;
}

// Same average through log-gamma binomial coefficients; usable for large
// user counts where enumeration is impossible. Needs h strictly inside (0,1).
inline double backhaul_loggamma(int users, long long slots, double h) {
  const int n = users - 1;
  const long double lh = std::log(static_cast<long double>(h));
  const long double lm = std::log(1.0L - static_cast<long double>(h));
  long double total = 0.0L;
  for (int m = 0; m <= n; ++m) {
    const long double lw = std::lgamma(static_cast<long double>(n) + 1.0L) -
                           std::lgamma(static_cast<long double>(m) + 1.0L) -
                           std::lgamma(static_cast<long double>(n - m) + 1.0L) +
                           static_cast<long double>(m) * lm +
                           static_cast<long double>(n - m) * lh;
    const long double grant =
        slots >= m + 1 ? 1.0L : static_cast<long double>(slots) / (m + 1);
    total += std::exp(lw) * grant;
  }
  return static_cast<double>(total);
}

// Reference minimum cache by linear scan over every size.
inline std::optional<long long> min_cache_linear(const CellSpec& cell,
                                                 const PopularityModel& pop,
                                                 double theta) {
  CellSpec c = cell;
  for (long long s = 0; s <= pop.library_size(); ++s) {
    c.cache_files = s;
    if (usp_exact(c, pop).p_user >= theta) return s;
  }
  return std::nullopt;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

// Rows of a comma-separated dump; blank lines come back as empty rows.
inline std::vector<std::vector<std::string>> parse_csv(
    const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty())
      rows.emplace_back();
    else
      rows.push_back(split_fields(line));
  }
  return rows;
}

}  // namespace testsupport
