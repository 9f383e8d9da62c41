#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cachealloc/model.hpp"

namespace cachealloc {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RadioConfig {
  double radius_m = 20.0;
  double pathloss_exp = 4.0;
  double noise_dbm = -102.0;
  double bandwidth_hz = 1.0e7;
  double tx_power_w = 1.0;
  double rate_target_bps = 2.0e6;

  bool operator==(const RadioConfig&) const = default;
};

struct PopularityConfig {
  long long library_size = 1000;
  double zipf_exp = 0.56;

  bool operator==(const PopularityConfig&) const = default;
};

struct CellConfig {
  int users = 15;
  double backhaul_mbps = 10.0;
  long long cache_files = 0;  // cache_bits inputs are folded into this
  std::optional<RadioConfig> radio;  // full per-cell override after merging

  bool operator==(const CellConfig&) const = default;
};

struct SweepConfig {
  double theta = 0.8;
  std::vector<long long> files = {250, 500, 1000, 2000, 4000};
  std::vector<double> gammas = {0.6, 1.5};
  std::vector<double> gamma_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7,
                                    0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5};

  bool operator==(const SweepConfig&) const = default;
};

struct ScenarioConfig {
  int schema = 1;
  RadioConfig radio;
  PopularityConfig popularity;
  std::optional<double> file_length_bits;
  std::vector<CellConfig> cells = {CellConfig{}};
  std::vector<double> theta = {0.6, 0.7, 0.8, 0.9};
  std::vector<double> backhaul_mbps_grid = {0, 2, 6, 10, 20, 28};
  SweepConfig sweep;
  std::vector<long long> budgets = {0, 250, 500, 1000, 1500, 2000, 2500, 3000};
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double epsilon = 1e-4;
  int workers = 0;

  bool operator==(const ScenarioConfig&) const = default;
};

// Strict parse: unknown fields, type mismatches, and invalid values all throw
// ConfigError with the JSON path of the offender.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

// Canonical JSON (fixed key order, all fields explicit); parse of the result
// reproduces the config exactly.
std::string serialize_config(const ScenarioConfig& cfg);

// Validated domain conversions.
RadioParams to_radio(const RadioConfig& rc);
PopularityModel to_popularity(const ScenarioConfig& cfg);
CellSpec to_cell(const ScenarioConfig& cfg, std::size_t index);
std::vector<CellSpec> to_cells(const ScenarioConfig& cfg);

}  // namespace cachealloc
