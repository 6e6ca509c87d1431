#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "oltsp/algorithms.hpp"

namespace oltsp {

namespace {

void check_items(const std::vector<KnapsackItem>& items, double capacity) {
  if (!(capacity >= 0.0)) throw std::invalid_argument("knapsack capacity must be >= 0");
  for (const KnapsackItem& it : items) {
    if (!(it.weight >= 0.0) || !(it.value >= 0.0)) {
      throw std::invalid_argument("knapsack item " + std::to_string(it.index) +
                                  " has a negative weight or value");
    }
  }
}

KnapsackChoice choice_of(const std::vector<KnapsackItem>& items, const std::vector<std::size_t>& pick) {
  KnapsackChoice c;
  for (std::size_t i : pick) {
    c.indices.push_back(items[i].index);
    c.value += items[i].value;
    c.weight += items[i].weight;
  }
  std::sort(c.indices.begin(), c.indices.end());
  return c;
}

KnapsackChoice exact(const std::vector<KnapsackItem>& items, double capacity) {
  const std::size_t n = items.size();
  if (n > static_cast<std::size_t>(kExactKnapsackCap)) {
    throw std::invalid_argument("exact knapsack supports at most " +
                                std::to_string(kExactKnapsackCap) + " items; use fptas");
  }
  std::uint32_t best_mask = 0;
  double best_value = 0.0;
  double best_weight = 0.0;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    double w = 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1u) {
        w += items[i].weight;
        v += items[i].value;
      }
    }
    if (w > capacity + kEps) continue;
    if (v > best_value || (v == best_value && w < best_weight)) {
      best_mask = m;
      best_value = v;
      best_weight = w;
    }
  }
  std::vector<std::size_t> pick;
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask >> i & 1u) pick.push_back(i);
  }
  return choice_of(items, pick);
}

// Value rounding: scale by K = eps * vmax / n and minimise weight per scaled
// value.
KnapsackChoice fptas(const std::vector<KnapsackItem>& items, double capacity, double eps) {
  if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("fptas epsilon must lie in (0, 1)");
  std::vector<std::size_t> usable;
  double vmax = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].weight <= capacity + kEps) {
      usable.push_back(i);
      vmax = std::max(vmax, items[i].value);
    }
  }
  if (usable.empty() || vmax <= 0.0) return {};
  const double k = eps * vmax / static_cast<double>(usable.size());
  std::vector<long> scaled;
  long total = 0;
  for (std::size_t i : usable) {
    scaled.push_back(static_cast<long>(std::floor(items[i].value / k)));
    total += scaled.back();
  }
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t m = usable.size();
  const std::size_t width = static_cast<std::size_t>(total) + 1;
  // w[i][v]: least weight reaching scaled value exactly v with the first i items.
  std::vector<double> w((m + 1) * width, inf);
  w[0] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double wi = items[usable[i]].weight;
    const auto si = static_cast<std::size_t>(scaled[i]);
    for (std::size_t v = 0; v < width; ++v) {
      double best = w[i * width + v];
      if (v >= si && w[i * width + v - si] + wi < best) best = w[i * width + v - si] + wi;
      w[(i + 1) * width + v] = best;
    }
  }
  std::size_t best_v = 0;
  for (std::size_t v = 0; v < width; ++v) {
    if (w[m * width + v] <= capacity + kEps) best_v = v;
  }
  std::vector<std::size_t> pick;
  std::size_t v = best_v;
  for (std::size_t i = m; i > 0; --i) {
    if (w[i * width + v] == w[(i - 1) * width + v]) continue;
    pick.push_back(usable[i - 1]);
    v -= static_cast<std::size_t>(scaled[i - 1]);
  }
  return choice_of(items, pick);
}

}  // namespace

KnapsackChoice knapsack_select(const std::vector<KnapsackItem>& items, double capacity,
                               KnapsackMode mode) {
  check_items(items, capacity);
  return mode.exact ? exact(items, capacity) : fptas(items, capacity, mode.epsilon);
}

}  // namespace oltsp
