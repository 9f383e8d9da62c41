#include "cachealloc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace cachealloc {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

constexpr double kSupportIsOne = 1.0 - 1e-12;

// Exact USP of one cell as a function of cache size. The wireless term does
// not depend on the cache, so it is computed once; every evaluated size is
// memoized. Composition goes through usp_compose, so values are bit-identical
// to usp_exact.
class CellUsp {
 public:
  CellUsp(const CellSpec& cell, const PopularityModel& pop,
          AllocationStats* stats)
      : cell_(cell), pop_(&pop), stats_(stats) {
    cell.validate();
    require(cell.radio.rate_target_bps > 0.0,
            "rate_target_bps: must be > 0 to normalize backhaul");
    slots_ = normalized_backhaul(cell.backhaul_bps, cell.radio.rate_target_bps);
  }

  const UspBreakdown& at(long long s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    if (!have_wireless_) {
      p_wireless_ = wireless_success(cell_.radio, cell_.users);
      have_wireless_ = true;
    }
    const double h = hit_ratio_exact(*pop_, s);
    const double pb = backhaul_success(cell_.users, slots_, h);
    if (stats_) ++stats_->usp_evaluations;
    return memo_.emplace(s, usp_compose(p_wireless_, h, pb)).first->second;
  }

 private:
  CellSpec cell_;
  const PopularityModel* pop_;
  AllocationStats* stats_;
  long long slots_ = 0;
  double p_wireless_ = 0.0;
  bool have_wireless_ = false;
  std::unordered_map<long long, UspBreakdown> memo_;
};

// Smallest s in [0, size] with USP(s) >= theta; USP is nondecreasing in s.
std::optional<long long> min_cache_search(CellUsp& usp, long long size,
                                          double theta) {
  if (usp.at(0).p_user >= theta) return 0;
  if (usp.at(size).p_user < theta) return std::nullopt;
  long long lo = 0, hi = size;  // usp(lo) < theta <= usp(hi)
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (usp.at(mid).p_user >= theta)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

void validate_problem(const AllocationProblem& problem) {
  require(!problem.cells.empty(), "cells: must be nonempty");
  require(problem.budget_files >= 0, "budget_files: must be >= 0");
  require(std::isfinite(problem.epsilon) && problem.epsilon > 0.0 &&
              problem.epsilon < 1.0,
          "epsilon: out of (0, 1)");
}

AllocationResult finish(std::vector<CellUsp>& cells,
                        std::vector<long long> alloc) {
  AllocationResult out;
  double rho = std::numeric_limits<double>::infinity();
  bool saturated = true;
  long long total = 0;
  for (std::size_t j = 0; j < alloc.size(); ++j) {
    const UspBreakdown& b = cells[j].at(alloc[j]);
    rho = std::min(rho, b.p_user);
    saturated = saturated && b.p_network >= kSupportIsOne;
    total += alloc[j];
  }
  out.cache_files = std::move(alloc);
  out.achieved_rho = rho;
  out.total_used = total;
  out.saturated = saturated;
  return out;
}

}  // namespace

std::optional<long long> min_cache_bisection(const CellSpec& cell,
                                             const PopularityModel& pop,
                                             double theta) {
  require(std::isfinite(theta) && theta >= 0.0 && theta <= 1.0,
          "theta: out of [0, 1]");
  CellUsp usp(cell, pop, nullptr);
  return min_cache_search(usp, pop.library_size(), theta);
}

AllocationResult allocate(const AllocationProblem& problem,
                          AllocationStats* stats) {
  validate_problem(problem);
  const std::size_t n = problem.cells.size();
  const long long size = problem.pop.library_size();
  std::vector<CellUsp> cells;
  cells.reserve(n);
  for (const CellSpec& c : problem.cells)
    cells.emplace_back(c, problem.pop, stats);

  std::vector<long long> best(n, 0);
  double rho_low = 0.0;
  double rho_up = 1.0;
  while (rho_up - rho_low >= problem.epsilon) {
    if (stats) ++stats->rho_iterations;
    const double rho = 0.5 * (rho_low + rho_up);
    std::vector<long long> cand(n, 0);
    long long total = 0;
    bool feasible = true;
    for (std::size_t j = 0; j < n; ++j) {
      const auto s = min_cache_search(cells[j], size, rho);
      if (!s) {  // target above this cell's ceiling: same as a budget miss
        feasible = false;
        break;
      }
      cand[j] = *s;
      total += *s;
      if (total > problem.budget_files) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      rho_low = rho;
      best = std::move(cand);
    } else {
      rho_up = rho;
    }
  }
  return finish(cells, std::move(best));
}

AllocationResult allocate_bruteforce(const AllocationProblem& problem) {
  validate_problem(problem);
  const std::size_t n = problem.cells.size();
  const long long size = problem.pop.library_size();

  double space = 1.0;
  for (std::size_t j = 0; j < n; ++j) space *= static_cast<double>(size) + 1.0;
  require(space <= 1e7, "search space exceeds 1e7 candidate allocations");

  std::vector<CellUsp> cells;
  cells.reserve(n);
  for (const CellSpec& c : problem.cells)
    cells.emplace_back(c, problem.pop, nullptr);
  // per-cell USP tables over every cache size
  std::vector<std::vector<double>> usp(n);
  for (std::size_t j = 0; j < n; ++j) {
    usp[j].resize(static_cast<std::size_t>(size) + 1);
    for (long long s = 0; s <= size; ++s)
      usp[j][static_cast<std::size_t>(s)] = cells[j].at(s).p_user;
  }

  std::vector<long long> cur(n, 0), best(n, 0);
  double best_rho = -1.0;
  long long best_total = std::numeric_limits<long long>::max();
  // lexicographic DFS; first strict improvement wins, so ties already resolve
  // to the smaller total and then the lexicographically smallest vector
  auto walk = [&](auto&& self, std::size_t j, long long left, double lowest,
                  long long used) -> void {
    if (j == n) {
      if (lowest > best_rho || (lowest == best_rho && used < best_total)) {
        best_rho = lowest;
        best_total = used;
        best = cur;
      }
      return;
    }
    const long long cap = std::min(size, left);
    for (long long s = 0; s <= cap; ++s) {
      cur[j] = s;
      self(self, j + 1, left - s,
           std::min(lowest, usp[j][static_cast<std::size_t>(s)]), used + s);
    }
  };
  walk(walk, 0, problem.budget_files,
       std::numeric_limits<double>::infinity(), 0);
  return finish(cells, std::move(best));
}

AllocationResult uniform_allocate(const AllocationProblem& problem) {
  validate_problem(problem);
  const std::size_t n = problem.cells.size();
  std::vector<CellUsp> cells;
  cells.reserve(n);
  for (const CellSpec& c : problem.cells)
    cells.emplace_back(c, problem.pop, nullptr);
  const long long per =
      std::min(problem.budget_files / static_cast<long long>(n),
               problem.pop.library_size());
  return finish(cells, std::vector<long long>(n, per));
}

}  // namespace cachealloc
