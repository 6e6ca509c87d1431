#pragma once

#include <memory>
#include <string>
#include <vector>

#include "oltsp/engine.hpp"

namespace oltsp {

// Per-order quantities of the wait-then-tour strategy.
struct TourStats {
  std::vector<int> order;
  double length = 0.0;           // closed tours include the return leg
  std::vector<double> prefix;    // prefix[i] = distance travelled on reaching order[i]
};

TourStats tour_stats(const MetricSpace& space, Variant variant,
                     const std::vector<Point>& locations,  // index id - 1
                     const std::vector<int>& order);

// Fraction of the tour that is fully released, counting the leg into the
// first unreleased request. `released` is indexed by id - 1.
double alpha(const TourStats& stats, const std::vector<bool>& released);

struct KnapsackItem {
  int index = 0;
  double weight = 0.0;
  double value = 0.0;
};

struct KnapsackMode {
  bool exact = true;
  double epsilon = 0.0;  // FPTAS only

  static KnapsackMode Exact() { return {true, 0.0}; }
  static KnapsackMode Fptas(double eps) { return {false, eps}; }
};

constexpr int kExactKnapsackCap = 20;

struct KnapsackChoice {
  std::vector<int> indices;  // item.index values, ascending
  double value = 0.0;
  double weight = 0.0;
};

KnapsackChoice knapsack_select(const std::vector<KnapsackItem>& items, double capacity,
                               KnapsackMode mode);

constexpr int kAlg1Cap = 9;

std::unique_ptr<Policy> make_alg1();
std::unique_ptr<Policy> make_alg2_ring();
std::unique_ptr<Policy> make_alg3_star(KnapsackMode mode = KnapsackMode::Exact());
std::unique_ptr<Policy> make_alg4_semiline();
std::unique_ptr<Policy> make_alg5_semiline();
std::unique_ptr<Policy> make_wait_all();
std::unique_ptr<Policy> make_greedy();

// Diagnostics of the most recent alg1 run, for tests and tracing.
struct Alg1Decision {
  double start_time = 0.0;
  std::vector<int> order;
  double objective = 0.0;
};
const Alg1Decision* alg1_decision(const Policy& policy);

// Parses `alg1`, `alg2-ring`, `alg3-star[:exact|:fptas=EPS]`, `alg4-semiline`,
// `alg5-semiline`, `wait-all`, `greedy`. Throws std::invalid_argument.
PolicyFactory policy_factory(const std::string& name);
// Base names only; alg3-star also accepts the suffixes above.
std::vector<std::string> policy_names();

// Space/variant a policy is defined for; empty when compatible.
std::string policy_scope_error(const std::string& name, SpaceKind kind, Variant variant);

}  // namespace oltsp
