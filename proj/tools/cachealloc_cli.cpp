// Command-line front end: computes exact/approximate user success
// probabilities for cache-equipped cells behind limited backhaul, sizes
// caches against USP targets, allocates a shared cache budget across cells,
// and cross-checks every analytic quantity against seeded Monte Carlo.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cachealloc/commands.hpp"
#include "cachealloc/config.hpp"

namespace {

struct SharedOpts {
  std::string config_path;
  std::string output_path;  // empty = stdout
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<double> epsilon;
  std::optional<int> workers;
};

void add_shared(CLI::App* cmd, SharedOpts& opts) {
  cmd->add_option("--config", opts.config_path, "scenario config (JSON)")
      ->required();
  cmd->add_option("--output", opts.output_path,
                  "write CSV here instead of stdout");
  cmd->add_option("--seed", opts.seed, "override config seed");
  cmd->add_option("--trials", opts.trials, "override config trial count");
  cmd->add_option("--epsilon", opts.epsilon,
                  "override config bisection resolution");
  cmd->add_option("--workers", opts.workers,
                  "override config worker count (0 = auto)");
}

int run(const SharedOpts& opts,
        int (*command)(const cachealloc::ScenarioConfig&, std::ostream&,
                       std::ostream&)) {
  cachealloc::ScenarioConfig cfg = cachealloc::load_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.trials) cfg.trials = *opts.trials;
  if (opts.epsilon) cfg.epsilon = *opts.epsilon;
  if (opts.workers) cfg.workers = *opts.workers;
  if (cfg.trials < 1) throw cachealloc::ConfigError("trials: must be >= 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw cachealloc::ConfigError("epsilon: out of (0, 1)");
  if (cfg.workers < 0 || cfg.workers > 256)
    throw cachealloc::ConfigError("workers: out of [0, 256]");
  if (opts.output_path.empty()) return command(cfg, std::cout, std::cerr);
  std::ofstream out(opts.output_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file: " + opts.output_path);
  return command(cfg, out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "user success probability and cache allocation for backhaul-limited "
      "cells"};
  app.require_subcommand(1);

  SharedOpts usp_opts, tradeoff_opts, sweep_opts, allocate_opts,
      validate_opts;
  std::string axis = "files";

  add_shared(app.add_subcommand(
                 "usp", "exact and approximate USP for the configured cells"),
             usp_opts);
  add_shared(app.add_subcommand(
                 "tradeoff",
                 "minimum cache vs backhaul for each USP target"),
             tradeoff_opts);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "minimum cache along a popularity axis");
  add_shared(sweep, sweep_opts);
  sweep->add_option("--axis", axis, "files | gamma")
      ->check(CLI::IsMember({"files", "gamma"}));
  add_shared(app.add_subcommand(
                 "allocate",
                 "max-min cache budget split across cells vs uniform"),
             allocate_opts);
  add_shared(app.add_subcommand(
                 "validate",
                 "analytic vs Monte Carlo cross-check with z-scores"),
             validate_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("usp")) return run(usp_opts, cachealloc::cmd_usp);
    if (app.got_subcommand("tradeoff"))
      return run(tradeoff_opts, cachealloc::cmd_tradeoff);
    if (app.got_subcommand("sweep")) {
      const auto ax = axis == "gamma" ? cachealloc::SweepAxis::kGamma
                                      : cachealloc::SweepAxis::kFiles;
      return run(sweep_opts,
                 ax == cachealloc::SweepAxis::kGamma
                     ? +[](const cachealloc::ScenarioConfig& c,
                           std::ostream& o, std::ostream& l) {
                         return cachealloc::cmd_sweep(
                             c, cachealloc::SweepAxis::kGamma, o, l);
                       }
                     : +[](const cachealloc::ScenarioConfig& c,
                           std::ostream& o, std::ostream& l) {
                         return cachealloc::cmd_sweep(
                             c, cachealloc::SweepAxis::kFiles, o, l);
                       });
    }
    if (app.got_subcommand("allocate"))
      return run(allocate_opts, cachealloc::cmd_allocate);
    if (app.got_subcommand("validate"))
      return run(validate_opts, cachealloc::cmd_validate);
  } catch (const cachealloc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cachealloc::kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cachealloc::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
