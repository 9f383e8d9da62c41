#include "cachealloc/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "cachealloc/quadrature.hpp"

namespace cachealloc {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_prob(double v, const char* msg) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, msg);
}

}  // namespace

double zipf_pmf(const PopularityModel& pop, long long rank) {
  require(rank >= 1 && rank <= pop.library_size(),
          "rank: out of [1, library_size]");
  return std::pow(static_cast<double>(rank), -pop.zipf_exp()) /
         pop.normalizer();
}

double hit_ratio_exact(const PopularityModel& pop, long long cache_files) {
  require(cache_files >= 0 && cache_files <= pop.library_size(),
          "cache_files: out of [0, library_size]");
  return pop.cum(cache_files);
}

double hit_ratio_approx(const PopularityModel& pop, double cache_files) {
  require(std::isfinite(cache_files) && cache_files >= 0.0 &&
              cache_files <= static_cast<double>(pop.library_size()),
          "cache_files: out of [0, library_size]");
  const double size = static_cast<double>(pop.library_size());
  if (cache_files >= size) return 1.0;
  if (cache_files <= 1.0) return 0.0;  // artifact of the continuous form
  const double gamma = pop.zipf_exp();
  if (gamma == 1.0) return std::log(cache_files) / std::log(size);
  const double e = 1.0 - gamma;
  return (std::pow(cache_files, e) - 1.0) / (std::pow(size, e) - 1.0);
}

double wireless_success(const RadioParams& radio, int users) {
  radio.validate();
  require(users >= 1, "users: must be >= 1");
  const double noise_w = dbm_to_watts(radio.noise_dbm);
  // success at distance x needs fading above c*x^alpha
  const double snr_floor =
      std::exp2(radio.rate_target_bps * users / radio.bandwidth_hz) - 1.0;
  if (snr_floor <= 0.0) return 1.0;  // no rate floor
  const double c =
      radio.bandwidth_hz * noise_w * snr_floor / (radio.tx_power_w * users);
  if (!std::isfinite(c)) return 0.0;  // threshold beyond representable SNR
  const double radius = radio.radius_m;
  const double alpha = radio.pathloss_exp;
  auto integrand = [c, alpha](double x) {
    return std::exp(-c * std::pow(x, alpha)) * x;
  };
  const QuadratureResult q = integrate_adaptive(integrand, 0.0, radius, 1e-10);
  if (!q.converged)
    throw QuadratureError("wireless_success: quadrature did not converge",
                          q.error_bound);
  return std::clamp(2.0 / (radius * radius) * q.value, 0.0, 1.0);
}

double backhaul_success(int users, long long slots, double hit_ratio) {
  require(users >= 1, "users: must be >= 1");
  require(slots >= 0, "slots: must be >= 0");
  require_prob(hit_ratio, "hit_ratio: out of [0, 1]");
  if (slots >= users) return 1.0;  // a slot for everyone, even all-miss
  if (slots == 0) return 0.0;
  const int others = users - 1;
  if (hit_ratio == 0.0)  // every other user misses: share slots/users
    return static_cast<double>(slots) / users;
  if (hit_ratio == 1.0) return 1.0;  // alone on the backhaul, slots >= 1

  // Average min(1, slots/(m+1)) over m ~ Binomial(others, 1-h). Terms come
  // from the mode-anchored multiplicative recurrence, so no factorials and no
  // underflow for users up to ~1e4; the pmf normalizes itself via `sum`.
  const long double h = hit_ratio;
  const long double miss = 1.0L - h;
  const long double up_ratio = miss / h;
  int mode = static_cast<int>(
      std::floor((others + 1) * static_cast<double>(miss)));
  mode = std::min(mode, others);
  long double sum = 0.0L;
  long double weighted = 0.0L;
  long double t = 1.0L;
  for (int m = mode; m <= others; ++m) {
    if (m > mode) t *= up_ratio * (others - (m - 1)) / static_cast<long double>(m);
    sum += t;
    const long double w =
        slots >= m + 1 ? 1.0L : static_cast<long double>(slots) / (m + 1);
    weighted += t * w;
  }
  t = 1.0L;
  for (int m = mode - 1; m >= 0; --m) {
    t *= (static_cast<long double>(m + 1) / (others - m)) / up_ratio;
    sum += t;
    const long double w =
        slots >= m + 1 ? 1.0L : static_cast<long double>(slots) / (m + 1);
    weighted += t * w;
  }
  return static_cast<double>(weighted / sum);
}

double network_support(double hit_ratio, double p_backhaul) {
  require_prob(hit_ratio, "hit_ratio: out of [0, 1]");
  require_prob(p_backhaul, "p_backhaul: out of [0, 1]");
  return hit_ratio + (1.0 - hit_ratio) * p_backhaul;
}

UspBreakdown usp_compose(double p_wireless, double hit_ratio,
                         double p_backhaul) {
  UspBreakdown b;
  b.p_wireless = p_wireless;
  b.p_backhaul = p_backhaul;
  b.hit_ratio = hit_ratio;
  b.p_network = network_support(hit_ratio, p_backhaul);
  b.p_user = p_wireless * b.p_network;
  return b;
}

UspBreakdown usp_exact(const CellSpec& cell, const PopularityModel& pop) {
  cell.validate();
  require(cell.cache_files <= pop.library_size(),
          "cache_files: exceeds library_size");
  require(cell.radio.rate_target_bps > 0.0,
          "rate_target_bps: must be > 0 to normalize backhaul");
  const double p_w = wireless_success(cell.radio, cell.users);
  const double h = hit_ratio_exact(pop, cell.cache_files);
  const long long slots =
      normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
  return usp_compose(p_w, h, backhaul_success(cell.users, slots, h));
}

double usp_approx_parts(double p_wireless, const PopularityModel& pop,
                        double cache_files, long long slots, int users) {
  require_prob(p_wireless, "p_wireless: out of [0, 1]");
  require(users >= 1, "users: must be >= 1");
  require(slots >= 0, "slots: must be >= 0");
  const double ha = hit_ratio_approx(pop, cache_files);
  return p_wireless *
         std::min(1.0, ha + static_cast<double>(slots) / users);
}

double usp_approx(const CellSpec& cell, const PopularityModel& pop) {
  cell.validate();
  require(cell.cache_files <= pop.library_size(),
          "cache_files: exceeds library_size");
  require(cell.radio.rate_target_bps > 0.0,
          "rate_target_bps: must be > 0 to normalize backhaul");
  const long long slots =
      normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
  return usp_approx_parts(wireless_success(cell.radio, cell.users), pop,
                          static_cast<double>(cell.cache_files), slots,
                          cell.users);
}

std::optional<double> min_cache_closed_form(double theta, double p_wireless,
                                            long long slots, int users,
                                            const PopularityModel& pop) {
  require_prob(theta, "theta: out of [0, 1]");
  require(std::isfinite(p_wireless) && p_wireless > 0.0 && p_wireless <= 1.0,
          "p_wireless: out of (0, 1]");
  require(slots >= 0, "slots: must be >= 0");
  require(users >= 1, "users: must be >= 1");
  if (theta > p_wireless) return std::nullopt;  // above the wireless ceiling
  const double needed =
      theta / p_wireless - static_cast<double>(slots) / users;
  if (needed <= 0.0) return 0.0;
  const double size = static_cast<double>(pop.library_size());
  const double gamma = pop.zipf_exp();
  double s;
  if (gamma == 1.0) {
    s = std::pow(size, needed);
  } else {
    const double e = 1.0 - gamma;
    s = std::pow(needed * (std::pow(size, e) - 1.0) + 1.0, 1.0 / e);
  }
  if (!(s > 0.0)) return 0.0;
  return std::min(s, size);
}

}  // namespace cachealloc
