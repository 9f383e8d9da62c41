#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cachealloc/model.hpp"
#include "support.hpp"

using namespace cachealloc;
using testsupport::close_rel;

TEST_CASE("dbm conversion reference points") {
  CHECK(close_rel(dbm_to_watts(30.0), 1.0, 1e-12));
  CHECK(close_rel(dbm_to_watts(0.0), 1e-3, 1e-12));
  CHECK(close_rel(dbm_to_watts(-30.0), 1e-6, 1e-12));
  // -102 dBm = 10^-13.2 W, about 6.31e-14.
  CHECK(close_rel(dbm_to_watts(-102.0), std::pow(10.0, -13.2), 1e-14));
  CHECK(close_rel(dbm_to_watts(-102.0), 6.30957344e-14, 1e-8));
}

TEST_CASE("dbm conversion scales by decades and is monotone") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> level(-150.0, 60.0);
  for (int i = 0; i < 200; ++i) {
    const double p = level(rng);
    CHECK(close_rel(dbm_to_watts(p + 10.0), 10.0 * dbm_to_watts(p), 1e-12));
    CHECK(dbm_to_watts(p + 0.5) > dbm_to_watts(p));
  }
}

TEST_CASE("dbm conversion rejects non-finite input") {
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(dbm_to_watts(std::nan("")), std::invalid_argument);
}

TEST_CASE("normalized backhaul floors capacity over the rate target") {
  CHECK(normalized_backhaul(0.0, 2e6) == 0);
  CHECK(normalized_backhaul(28e6, 2e6) == 14);
  CHECK(normalized_backhaul(3e6, 2e6) == 1);
  CHECK(normalized_backhaul(1.999999e6, 2e6) == 0);
  CHECK(normalized_backhaul(2e6, 2e6) == 1);
}

TEST_CASE("normalized backhaul is nondecreasing in capacity") {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> cap(0.0, 1e8);
  for (int i = 0; i < 200; ++i) {
    double a = cap(rng);
    double b = cap(rng);
    if (a > b) std::swap(a, b);
    CHECK(normalized_backhaul(a, 2e6) <= normalized_backhaul(b, 2e6));
  }
}

TEST_CASE("normalized backhaul input validation") {
  CHECK_THROWS_AS(normalized_backhaul(1e6, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(normalized_backhaul(1e6, -2e6), std::invalid_argument);
  CHECK_THROWS_AS(normalized_backhaul(-1.0, 2e6), std::invalid_argument);
}

TEST_CASE("normalized cache floors bits over file length") {
  CHECK(normalized_cache(1e9, 8e6) == 125);
  CHECK(normalized_cache(7.9e6, 8e6) == 0);
  CHECK(normalized_cache(0.0, 8e6) == 0);
  CHECK_THROWS_AS(normalized_cache(1e9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(normalized_cache(-1.0, 8e6), std::invalid_argument);
}

TEST_CASE("radio validation names the offending field") {
  using testsupport::baseline_radio;
  {
    RadioParams r = baseline_radio();
    r.radius_m = 0.0;
    CHECK_THROWS_WITH_AS(r.validate(), doctest::Contains("radius_m"),
                         std::invalid_argument);
  }
  {
    RadioParams r = baseline_radio();
    r.pathloss_exp = -4.0;
    CHECK_THROWS_WITH_AS(r.validate(), doctest::Contains("pathloss_exp"),
                         std::invalid_argument);
  }
  {
    RadioParams r = baseline_radio();
    r.noise_dbm = std::nan("");
    CHECK_THROWS_WITH_AS(r.validate(), doctest::Contains("noise_dbm"),
                         std::invalid_argument);
  }
  {
    RadioParams r = baseline_radio();
    r.bandwidth_hz = 0.0;
    CHECK_THROWS_WITH_AS(r.validate(), doctest::Contains("bandwidth_hz"),
                         std::invalid_argument);
  }
  {
    RadioParams r = baseline_radio();
    r.tx_power_w = -1.0;
    CHECK_THROWS_WITH_AS(r.validate(), doctest::Contains("tx_power_w"),
                         std::invalid_argument);
  }
  {
    RadioParams r = baseline_radio();
    r.rate_target_bps = -2e6;
    CHECK_THROWS_WITH_AS(r.validate(), doctest::Contains("rate_target_bps"),
                         std::invalid_argument);
  }
  // A zero rate target is allowed at this layer (means: no rate floor).
  RadioParams ok = baseline_radio();
  ok.rate_target_bps = 0.0;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("cell validation names the offending field") {
  using testsupport::baseline_cell;
  {
    CellSpec c = baseline_cell(0, 1e7, 0);
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("users"),
                         std::invalid_argument);
  }
  {
    CellSpec c = baseline_cell(15, -1.0, 0);
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("backhaul_bps"),
                         std::invalid_argument);
  }
  {
    CellSpec c = baseline_cell(15, 1e7, -3);
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("cache_files"),
                         std::invalid_argument);
  }
  CHECK_NOTHROW(baseline_cell(15, 0.0, 0).validate());
}

TEST_CASE("popularity model construction bounds") {
  CHECK_THROWS_AS(PopularityModel(0, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(PopularityModel(-5, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(PopularityModel(10, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(PopularityModel(10, std::nan("")), std::invalid_argument);
  CHECK_NOTHROW(PopularityModel(1, 0.0));
  CHECK_NOTHROW(PopularityModel(1000, 0.56));
}

TEST_CASE("popularity cumulative table edges and monotonicity") {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> gam(0.0, 2.0);
  for (int i = 0; i < 30; ++i) {
    const long long files = 1 + static_cast<long long>(rng() % 5000);
    const PopularityModel pop(files, gam(rng));
    CHECK(pop.library_size() == files);
    CHECK(pop.cum(0) == 0.0);
    CHECK(pop.cum(files) == 1.0);  // exact by construction
    double prev = 0.0;
    const long long step = std::max<long long>(1, files / 37);
    for (long long s = 0; s <= files; s += step) {
      const double c = pop.cum(s);
      CHECK(c >= prev);
      CHECK(c <= 1.0);
      prev = c;
    }
  }
}

TEST_CASE("popularity cumulative increments are the ranked weights") {
  const PopularityModel pop(4, 0.0);
  for (long long s = 1; s <= 4; ++s)
    CHECK(close_rel(pop.cum(s) - pop.cum(s - 1), 0.25, 1e-12));

  // exponent 1, two files: weights 1 and 1/2, so shares 2/3 and 1/3
  const PopularityModel two(2, 1.0);
  CHECK(close_rel(two.cum(1), 2.0 / 3.0, 1e-12));
}

TEST_CASE("popularity normalizer matches a direct power sum") {
  const PopularityModel pop(100, 0.7);
  long double z = 0.0L;
  for (int f = 1; f <= 100; ++f) z += std::pow(1.0L * f, -0.7L);
  CHECK(close_rel(pop.normalizer(), static_cast<double>(z), 1e-10));
}
