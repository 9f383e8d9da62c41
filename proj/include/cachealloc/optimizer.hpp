#pragma once

#include <optional>
#include <vector>

#include "cachealloc/analytic.hpp"
#include "cachealloc/model.hpp"

namespace cachealloc {

struct AllocationProblem {
  std::vector<CellSpec> cells;  // cache_files fields are outputs, not inputs
  PopularityModel pop;
  long long budget_files = 0;  // shared cache budget C0
  double epsilon = 1e-4;       // bisection resolution on the min-USP axis
};

struct AllocationStats {
  long long usp_evaluations = 0;  // distinct exact USP computations
  int rho_iterations = 0;
};

// Smallest cache size whose exact USP meets theta, or nullopt when even the
// full library cannot (theta above the wireless ceiling). Uses at most
// ceil(log2(library_size + 1)) + 2 exact USP evaluations.
std::optional<long long> min_cache_bisection(const CellSpec& cell,
                                             const PopularityModel& pop,
                                             double theta);

// Max-min cache allocation: bisect on the worst-cell USP target; at each
// probe solve every cell's minimum-cache subproblem and accept when the total
// fits the budget (a cell with an unreachable target counts as a violation).
// Returns the allocation of the last accepted probe with its exact achieved
// min-USP; the all-zero allocation when no probe is accepted.
AllocationResult allocate(const AllocationProblem& problem,
                          AllocationStats* stats = nullptr);

// Exhaustive reference: enumerates every allocation with total <= budget and
// per-cell size <= library_size. Ties go to the smaller total, then to the
// lexicographically smallest vector. Guarded to <= 1e7 candidates.
AllocationResult allocate_bruteforce(const AllocationProblem& problem);

// Even split floor(budget / cells), capped at the library size; the
// remainder stays unallocated.
AllocationResult uniform_allocate(const AllocationProblem& problem);

}  // namespace cachealloc
