#pragma once

#include <vector>

#include "oltsp/instance.hpp"

namespace oltsp {

constexpr int kOracleCap = 18;
constexpr int kBruteForceCap = 10;

struct OptResult {
  double makespan = 0.0;
  std::vector<int> order;            // request ids
  std::vector<double> step_times;    // service time of order[i]
};

// Directed distances between the origin (index 0) and request points 1..n.
Matrix distance_table(const Instance& inst);

// Waiting fold of a fixed service order (ids), including the return leg when
// the instance is closed.
OptResult fold_order(const Instance& inst, const Matrix& d, const std::vector<int>& order);

// Exact optimum by subset DP. `makespan` is the exact minimum; `order` is the
// lexicographically smallest order whose fold is within kEps (relative) of it,
// so orders that tie up to rounding resolve the same way everywhere. Throws
// std::invalid_argument above kOracleCap.
OptResult opt_makespan(const Instance& inst);

// Same contract by enumerating every permutation (n <= kBruteForceCap).
OptResult opt_bruteforce(const Instance& inst);

// Copy of the instance with every release set to 0.
Instance without_releases(const Instance& inst);

}  // namespace oltsp
