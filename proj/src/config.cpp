#include "cachealloc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cachealloc {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_object(const json& j, const std::string& path) {
  if (!j.is_object())
    fail((path.empty() ? std::string("config") : path) +
         ": expected an object");
}

void check_known(const json& j, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known) fail("unknown field: " + join(path, item.key()));
  }
}

double as_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path + ": expected a number");
  return j.get<double>();
}

long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(path + ": expected an integer");
  return j.get<long long>();
}

std::uint64_t as_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0)
    return static_cast<std::uint64_t>(j.get<long long>());
  fail(path + ": expected a nonnegative integer");
}

void apply_num(const json& obj, const char* key, const std::string& path,
               double& target) {
  if (auto it = obj.find(key); it != obj.end())
    target = as_num(*it, join(path, key));
}

void apply_int(const json& obj, const char* key, const std::string& path,
               long long& target) {
  if (auto it = obj.find(key); it != obj.end())
    target = as_int(*it, join(path, key));
}

RadioConfig parse_radio(const json& j, const std::string& path,
                        RadioConfig base) {
  check_object(j, path);
  check_known(j, path,
              {"radius_m", "pathloss_exp", "noise_dbm", "bandwidth_hz",
               "tx_power_w", "rate_target_bps"});
  apply_num(j, "radius_m", path, base.radius_m);
  apply_num(j, "pathloss_exp", path, base.pathloss_exp);
  apply_num(j, "noise_dbm", path, base.noise_dbm);
  apply_num(j, "bandwidth_hz", path, base.bandwidth_hz);
  apply_num(j, "tx_power_w", path, base.tx_power_w);
  apply_num(j, "rate_target_bps", path, base.rate_target_bps);
  return base;
}

CellConfig parse_cell(const json& j, const std::string& path,
                      const ScenarioConfig& top) {
  check_object(j, path);
  check_known(j, path,
              {"users", "backhaul_mbps", "cache_files", "cache_bits", "radio"});
  CellConfig cell;
  if (auto it = j.find("users"); it != j.end())
    cell.users = static_cast<int>(as_int(*it, join(path, "users")));
  apply_num(j, "backhaul_mbps", path, cell.backhaul_mbps);
  const bool has_files = j.contains("cache_files");
  const bool has_bits = j.contains("cache_bits");
  if (has_files && has_bits)
    fail(path + ": give either cache_files or cache_bits, not both");
  if (has_files) apply_int(j, "cache_files", path, cell.cache_files);
  if (has_bits) {
    if (!top.file_length_bits)
      fail(join(path, "cache_bits") +
           ": requires top-level file_length_bits");
    const double bits = as_num(j.at("cache_bits"), join(path, "cache_bits"));
    try {
      cell.cache_files = normalized_cache(bits, *top.file_length_bits);
    } catch (const std::invalid_argument& e) {
      fail(join(path, "cache_bits") + ": " + e.what());
    }
  }
  if (auto it = j.find("radio"); it != j.end())
    cell.radio = parse_radio(*it, join(path, "radio"), top.radio);
  return cell;
}

SweepConfig parse_sweep(const json& j, const std::string& path) {
  check_object(j, path);
  check_known(j, path, {"theta", "files", "gammas", "gamma_grid"});
  SweepConfig sweep;
  apply_num(j, "theta", path, sweep.theta);
  auto read_ints = [&](const char* key, std::vector<long long>& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array()) fail(join(path, key) + ": expected an array");
    out.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      out.push_back(as_int((*it)[i],
                           join(path, key) + "[" + std::to_string(i) + "]"));
  };
  auto read_nums = [&](const char* key, std::vector<double>& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array()) fail(join(path, key) + ": expected an array");
    out.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      out.push_back(as_num((*it)[i],
                           join(path, key) + "[" + std::to_string(i) + "]"));
  };
  read_ints("files", sweep.files);
  read_nums("gammas", sweep.gammas);
  read_nums("gamma_grid", sweep.gamma_grid);
  return sweep;
}

void check_prob(double v, const std::string& path) {
  if (!(std::isfinite(v) && v >= 0.0 && v <= 1.0))
    fail(path + ": out of [0, 1]");
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.schema != 1) fail("schema: must be 1");
  try {
    to_radio(cfg.radio);
  } catch (const std::invalid_argument& e) {
    fail(std::string("radio.") + e.what());
  }
  try {
    to_popularity(cfg);
  } catch (const std::invalid_argument& e) {
    fail(std::string("popularity.") + e.what());
  }
  if (cfg.file_length_bits &&
      !(std::isfinite(*cfg.file_length_bits) && *cfg.file_length_bits > 0.0))
    fail("file_length_bits: must be > 0");
  if (cfg.cells.empty()) fail("cells: must be nonempty");
  for (std::size_t i = 0; i < cfg.cells.size(); ++i) {
    const std::string path = "cells[" + std::to_string(i) + "]";
    try {
      const CellSpec cell = to_cell(cfg, i);
      if (cell.radio.rate_target_bps <= 0.0)
        fail(path + ".rate_target_bps: must be > 0");
    } catch (const std::invalid_argument& e) {
      fail(path + "." + e.what());
    }
    if (cfg.cells[i].cache_files > cfg.popularity.library_size)
      fail(path + ".cache_files: exceeds popularity.library_size");
  }
  if (cfg.theta.empty()) fail("theta: must be nonempty");
  for (std::size_t i = 0; i < cfg.theta.size(); ++i)
    check_prob(cfg.theta[i], "theta[" + std::to_string(i) + "]");
  if (cfg.backhaul_mbps_grid.empty())
    fail("backhaul_mbps_grid: must be nonempty");
  for (std::size_t i = 0; i < cfg.backhaul_mbps_grid.size(); ++i)
    if (!(std::isfinite(cfg.backhaul_mbps_grid[i]) &&
          cfg.backhaul_mbps_grid[i] >= 0.0))
      fail("backhaul_mbps_grid[" + std::to_string(i) + "]: must be >= 0");
  check_prob(cfg.sweep.theta, "sweep.theta");
  if (cfg.sweep.files.empty()) fail("sweep.files: must be nonempty");
  for (std::size_t i = 0; i < cfg.sweep.files.size(); ++i)
    if (cfg.sweep.files[i] < 1)
      fail("sweep.files[" + std::to_string(i) + "]: must be >= 1");
  if (cfg.sweep.gammas.empty()) fail("sweep.gammas: must be nonempty");
  for (std::size_t i = 0; i < cfg.sweep.gammas.size(); ++i)
    if (!(std::isfinite(cfg.sweep.gammas[i]) && cfg.sweep.gammas[i] >= 0.0))
      fail("sweep.gammas[" + std::to_string(i) + "]: must be >= 0");
  if (cfg.sweep.gamma_grid.empty()) fail("sweep.gamma_grid: must be nonempty");
  for (std::size_t i = 0; i < cfg.sweep.gamma_grid.size(); ++i)
    if (!(std::isfinite(cfg.sweep.gamma_grid[i]) &&
          cfg.sweep.gamma_grid[i] >= 0.0))
      fail("sweep.gamma_grid[" + std::to_string(i) + "]: must be >= 0");
  if (cfg.budgets.empty()) fail("budgets: must be nonempty");
  for (std::size_t i = 0; i < cfg.budgets.size(); ++i)
    if (cfg.budgets[i] < 0)
      fail("budgets[" + std::to_string(i) + "]: must be >= 0");
  if (cfg.trials < 1) fail("trials: must be >= 1");
  if (!(std::isfinite(cfg.epsilon) && cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    fail("epsilon: out of (0, 1)");
  if (cfg.workers < 0 || cfg.workers > 256)
    fail("workers: out of [0, 256]");
}

json radio_json(const RadioConfig& r) {
  json j;
  j["radius_m"] = r.radius_m;
  j["pathloss_exp"] = r.pathloss_exp;
  j["noise_dbm"] = r.noise_dbm;
  j["bandwidth_hz"] = r.bandwidth_hz;
  j["tx_power_w"] = r.tx_power_w;
  j["rate_target_bps"] = r.rate_target_bps;
  return j;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t stop = std::min(e.byte, json_text.size());
    for (std::size_t i = 0; i < stop; ++i)
      if (json_text[i] == '\n') ++line;
    fail("parse error at line " + std::to_string(line) + ": " + e.what());
  }
  check_object(root, "");
  check_known(root, "",
              {"schema", "radio", "popularity", "file_length_bits", "cells",
               "theta", "backhaul_mbps_grid", "sweep", "budgets", "trials",
               "seed", "epsilon", "workers"});
  ScenarioConfig cfg;
  if (auto it = root.find("schema"); it != root.end())
    cfg.schema = static_cast<int>(as_int(*it, "schema"));
  if (auto it = root.find("radio"); it != root.end())
    cfg.radio = parse_radio(*it, "radio", RadioConfig{});
  if (auto it = root.find("popularity"); it != root.end()) {
    check_object(*it, "popularity");
    check_known(*it, "popularity", {"library_size", "zipf_exp"});
    apply_int(*it, "library_size", "popularity",
              cfg.popularity.library_size);
    apply_num(*it, "zipf_exp", "popularity", cfg.popularity.zipf_exp);
  }
  if (auto it = root.find("file_length_bits"); it != root.end())
    cfg.file_length_bits = as_num(*it, "file_length_bits");
  if (auto it = root.find("cells"); it != root.end()) {
    if (!it->is_array()) fail("cells: expected an array");
    cfg.cells.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      cfg.cells.push_back(parse_cell(
          (*it)[i], "cells[" + std::to_string(i) + "]", cfg));
  }
  auto read_num_list = [&](const char* key, std::vector<double>& out) {
    auto it = root.find(key);
    if (it == root.end()) return;
    if (!it->is_array()) fail(std::string(key) + ": expected an array");
    out.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      out.push_back(
          as_num((*it)[i], std::string(key) + "[" + std::to_string(i) + "]"));
  };
  read_num_list("theta", cfg.theta);
  read_num_list("backhaul_mbps_grid", cfg.backhaul_mbps_grid);
  if (auto it = root.find("sweep"); it != root.end())
    cfg.sweep = parse_sweep(*it, "sweep");
  if (auto it = root.find("budgets"); it != root.end()) {
    if (!it->is_array()) fail("budgets: expected an array");
    cfg.budgets.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      cfg.budgets.push_back(
          as_int((*it)[i], "budgets[" + std::to_string(i) + "]"));
  }
  if (auto it = root.find("trials"); it != root.end())
    cfg.trials = as_uint(*it, "trials");
  if (auto it = root.find("seed"); it != root.end())
    cfg.seed = as_uint(*it, "seed");
  if (auto it = root.find("epsilon"); it != root.end())
    cfg.epsilon = as_num(*it, "epsilon");
  if (auto it = root.find("workers"); it != root.end())
    cfg.workers = static_cast<int>(as_int(*it, "workers"));
  validate_config(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json j;
  j["schema"] = cfg.schema;
  j["radio"] = radio_json(cfg.radio);
  j["popularity"]["library_size"] = cfg.popularity.library_size;
  j["popularity"]["zipf_exp"] = cfg.popularity.zipf_exp;
  if (cfg.file_length_bits) j["file_length_bits"] = *cfg.file_length_bits;
  j["cells"] = json::array();
  for (const CellConfig& cell : cfg.cells) {
    json c;
    c["users"] = cell.users;
    c["backhaul_mbps"] = cell.backhaul_mbps;
    c["cache_files"] = cell.cache_files;
    if (cell.radio) c["radio"] = radio_json(*cell.radio);
    j["cells"].push_back(std::move(c));
  }
  j["theta"] = cfg.theta;
  j["backhaul_mbps_grid"] = cfg.backhaul_mbps_grid;
  j["sweep"]["theta"] = cfg.sweep.theta;
  j["sweep"]["files"] = cfg.sweep.files;
  j["sweep"]["gammas"] = cfg.sweep.gammas;
  j["sweep"]["gamma_grid"] = cfg.sweep.gamma_grid;
  j["budgets"] = cfg.budgets;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["epsilon"] = cfg.epsilon;
  j["workers"] = cfg.workers;
  return j.dump(2) + "\n";
}

RadioParams to_radio(const RadioConfig& rc) {
  RadioParams r;
  r.radius_m = rc.radius_m;
  r.pathloss_exp = rc.pathloss_exp;
  r.noise_dbm = rc.noise_dbm;
  r.bandwidth_hz = rc.bandwidth_hz;
  r.tx_power_w = rc.tx_power_w;
  r.rate_target_bps = rc.rate_target_bps;
  r.validate();
  return r;
}

PopularityModel to_popularity(const ScenarioConfig& cfg) {
  return PopularityModel(cfg.popularity.library_size,
                         cfg.popularity.zipf_exp);
}

CellSpec to_cell(const ScenarioConfig& cfg, std::size_t index) {
  if (index >= cfg.cells.size())
    throw std::invalid_argument("cell index out of range");
  const CellConfig& cc = cfg.cells[index];
  CellSpec cell;
  cell.radio = to_radio(cc.radio ? *cc.radio : cfg.radio);
  cell.users = cc.users;
  cell.backhaul_bps = cc.backhaul_mbps * 1e6;
  cell.cache_files = cc.cache_files;
  cell.validate();
  return cell;
}

std::vector<CellSpec> to_cells(const ScenarioConfig& cfg) {
  std::vector<CellSpec> cells;
  cells.reserve(cfg.cells.size());
  for (std::size_t i = 0; i < cfg.cells.size(); ++i)
    cells.push_back(to_cell(cfg, i));
  return cells;
}

}  // namespace cachealloc
