#include "cachealloc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "cachealloc/analytic.hpp"
#include "cachealloc/csv.hpp"
#include "cachealloc/optimizer.hpp"
#include "cachealloc/simulator.hpp"

namespace cachealloc {

namespace {

constexpr const char* kInfeasible = "infeasible";
constexpr double kZFailThreshold = 4.0;

std::string fmt_ll(long long v) { return std::to_string(v); }

}  // namespace

double z_score(double analytic, const TrialEstimate& est) {
  if (est.mean == analytic) return 0.0;
  if (est.std_err == 0.0)
    return est.mean > analytic ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
  return (est.mean - analytic) / est.std_err;
}

int cmd_usp(const ScenarioConfig& cfg, std::ostream& out, std::ostream& log) {
  const PopularityModel pop = to_popularity(cfg);
  CsvWriter csv(out);
  csv.row({"cell", "users", "backhaul_mbps", "slots", "cache_files",
           "hit_ratio", "p_wireless", "p_backhaul", "p_network", "p_user",
           "p_user_approx"});
  for (std::size_t i = 0; i < cfg.cells.size(); ++i) {
    const CellSpec cell = to_cell(cfg, i);
    const UspBreakdown b = usp_exact(cell, pop);
    const double approx = usp_approx(cell, pop);
    const long long slots =
        normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
    csv.row({fmt_ll(static_cast<long long>(i)), fmt_ll(cell.users),
             format_double(cfg.cells[i].backhaul_mbps), fmt_ll(slots),
             fmt_ll(cell.cache_files), format_double(b.hit_ratio),
             format_double(b.p_wireless), format_double(b.p_backhaul),
             format_double(b.p_network), format_double(b.p_user),
             format_double(approx)});
    log << "cell " << i << ": p_user=" << format_double(b.p_user)
        << " approx=" << format_double(approx) << "\n";
  }
  return kOk;
}

int cmd_tradeoff(const ScenarioConfig& cfg, std::ostream& out,
                 std::ostream& log) {
  const PopularityModel pop = to_popularity(cfg);
  const CellSpec base = to_cell(cfg, 0);
  const double p_w = wireless_success(base.radio, base.users);
  std::vector<double> thetas = cfg.theta;
  std::sort(thetas.begin(), thetas.end());
  std::vector<double> grid = cfg.backhaul_mbps_grid;
  std::sort(grid.begin(), grid.end());

  CsvWriter csv(out);
  csv.row({"backhaul_mbps", "theta", "min_cache_exact",
           "min_cache_closed_form"});
  std::size_t feasible = 0, total = 0;
  for (double theta : thetas) {
    for (double mbps : grid) {
      CellSpec cell = base;
      cell.backhaul_bps = mbps * 1e6;
      const long long slots =
          normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
      const auto exact = min_cache_bisection(cell, pop, theta);
      const auto closed =
          min_cache_closed_form(theta, p_w, slots, base.users, pop);
      csv.row({format_double(mbps), format_double(theta),
               exact ? fmt_ll(*exact) : kInfeasible,
               closed ? format_double(*closed) : kInfeasible});
      ++total;
      if (exact) ++feasible;
    }
  }
  log << "tradeoff: " << feasible << "/" << total << " rows feasible"
      << " (wireless ceiling " << format_double(p_w) << ")\n";
  return feasible == 0 ? kAllInfeasible : kOk;
}

int cmd_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::ostream& out,
              std::ostream& log) {
  const CellSpec base = to_cell(cfg, 0);
  const double theta = cfg.sweep.theta;
  CsvWriter csv(out);
  std::size_t feasible = 0, total = 0;
  if (axis == SweepAxis::kFiles) {
    std::vector<double> gammas = cfg.sweep.gammas;
    std::sort(gammas.begin(), gammas.end());
    std::vector<long long> files = cfg.sweep.files;
    std::sort(files.begin(), files.end());
    csv.row({"files", "zipf_exp", "min_cache"});
    for (double gamma : gammas) {
      for (long long f : files) {
        const PopularityModel pop(f, gamma);
        const auto s = min_cache_bisection(base, pop, theta);
        csv.row({fmt_ll(f), format_double(gamma),
                 s ? fmt_ll(*s) : kInfeasible});
        ++total;
        if (s) ++feasible;
      }
    }
  } else {
    std::vector<double> grid = cfg.sweep.gamma_grid;
    std::sort(grid.begin(), grid.end());
    csv.row({"zipf_exp", "min_cache"});
    for (double gamma : grid) {
      const PopularityModel pop(cfg.popularity.library_size, gamma);
      const auto s = min_cache_bisection(base, pop, theta);
      csv.row({format_double(gamma), s ? fmt_ll(*s) : kInfeasible});
      ++total;
      if (s) ++feasible;
    }
  }
  log << "sweep: " << feasible << "/" << total << " points feasible at theta="
      << format_double(theta) << "\n";
  return feasible == 0 ? kAllInfeasible : kOk;
}

int cmd_allocate(const ScenarioConfig& cfg, std::ostream& out,
                 std::ostream& log) {
  AllocationProblem problem{to_cells(cfg), to_popularity(cfg), 0,
                            cfg.epsilon};
  std::vector<long long> budgets = cfg.budgets;
  std::sort(budgets.begin(), budgets.end());

  CsvWriter csv(out);
  csv.row({"budget", "method", "achieved_min_usp", "total_used", "saturated"});
  std::vector<AllocationResult> optimal;
  optimal.reserve(budgets.size());
  for (long long budget : budgets) {
    problem.budget_files = budget;
    AllocationResult opt = allocate(problem);
    const AllocationResult uni = uniform_allocate(problem);
    csv.row({fmt_ll(budget), "optimal", format_double(opt.achieved_rho),
             fmt_ll(opt.total_used), opt.saturated ? "true" : "false"});
    csv.row({fmt_ll(budget), "uniform", format_double(uni.achieved_rho),
             fmt_ll(uni.total_used), uni.saturated ? "true" : "false"});
    log << "budget " << budget << ": optimal "
        << format_double(opt.achieved_rho) << ", uniform "
        << format_double(uni.achieved_rho) << "\n";
    optimal.push_back(std::move(opt));
  }
  csv.blank_line();
  csv.row({"budget", "cell", "backhaul_mbps", "cache_files"});
  for (std::size_t b = 0; b < budgets.size(); ++b)
    for (std::size_t j = 0; j < cfg.cells.size(); ++j)
      csv.row({fmt_ll(budgets[b]), fmt_ll(static_cast<long long>(j)),
               format_double(cfg.cells[j].backhaul_mbps),
               fmt_ll(optimal[b].cache_files[j])});
  return kOk;
}

int cmd_validate(const ScenarioConfig& cfg, std::ostream& out,
                 std::ostream& log) {
  const PopularityModel pop = to_popularity(cfg);
  CsvWriter csv(out);
  csv.row({"quantity", "analytic", "empirical", "std_err", "trials", "z"});
  double worst = 0.0;
  std::uint64_t row_seed = cfg.seed;
  auto emit = [&](const std::string& name, double analytic,
                  const TrialEstimate& est) {
    const double z = z_score(analytic, est);
    worst = std::max(worst, std::fabs(z));
    csv.row({name, format_double(analytic), format_double(est.mean),
             format_double(est.std_err), std::to_string(est.trials),
             format_double(z)});
  };
  auto next_sim = [&] {
    return SimConfig{cfg.trials, row_seed++, cfg.workers};
  };

  for (std::size_t i = 0; i < cfg.cells.size(); ++i) {
    const CellSpec cell = to_cell(cfg, i);
    const std::string suffix = "_cell" + std::to_string(i);
    const UspBreakdown b = usp_exact(cell, pop);
    emit("wireless" + suffix, b.p_wireless,
         simulate_wireless(cell.radio, cell.users, next_sim()));
    const long long slots =
        normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
    emit("backhaul" + suffix, b.p_backhaul,
         simulate_backhaul(cell.users, slots, b.hit_ratio, next_sim()));
    emit("usp" + suffix, b.p_user, simulate_usp(cell, pop, next_sim()));
  }
  // fixed reference rows with known outcomes
  const int u0 = cfg.cells.front().users;
  emit("backhaul_saturated", backhaul_success(u0, u0, 0.5),
       simulate_backhaul(u0, u0, 0.5, next_sim()));
  emit("backhaul_pair", backhaul_success(2, 1, 0.5),
       simulate_backhaul(2, 1, 0.5, next_sim()));

  log << "validate: max |z| = " << format_double(worst) << " over "
      << (cfg.cells.size() * 3 + 2) << " rows at " << cfg.trials
      << " trials\n";
  return worst > kZFailThreshold ? kValidationFailed : kOk;
}

}  // namespace cachealloc
