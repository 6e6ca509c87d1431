#include "oltsp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oltsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Matrix distance_table(const Instance& inst) {
  const int n = inst.size();
  std::vector<Point> pts;
  pts.push_back(inst.space.origin());
  for (const Request& r : inst.requests) pts.push_back(r.point);
  Matrix d(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(n + 1)));
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      d[a][b] = a == b ? 0.0 : inst.space.distance(pts[a], pts[b]);
    }
  }
  return d;
}

OptResult fold_order(const Instance& inst, const Matrix& d, const std::vector<int>& order) {
  OptResult res;
  res.order = order;
  double t = 0.0;
  int prev = 0;
  for (int id : order) {
    t = std::max(t + d[prev][id], inst.request(id).release);
    res.step_times.push_back(t);
    prev = id;
  }
  if (inst.variant == Variant::Closed) t += d[prev][0];
  res.makespan = t;
  return res;
}

Instance without_releases(const Instance& inst) {
  Instance out = inst;
  for (Request& r : out.requests) r.release = 0.0;
  return out;
}

OptResult opt_makespan(const Instance& inst) {
  const int n = inst.size();
  if (n > kOracleCap) {
    throw std::invalid_argument("oracle supports at most " + std::to_string(kOracleCap) +
                                " requests (got " + std::to_string(n) + ")");
  }
  if (n == 0) return OptResult{};
  const Matrix d = distance_table(inst);
  const bool closed = inst.variant == Variant::Closed;
  const std::uint32_t full = (1u << n) - 1;
  const std::size_t stride = static_cast<std::size_t>(n);
  auto rel = [&](int j) { return inst.requests[static_cast<std::size_t>(j)].release; };

  // f[S][j]: earliest time at which every request of S is served, ending at
  // request j (0-based) in S.
  std::vector<double> f(static_cast<std::size_t>(full + 1) * stride, kInf);
  for (int j = 0; j < n; ++j) f[(1u << j) * stride + j] = std::max(d[0][j + 1], rel(j));
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (int j = 0; j < n; ++j) {
      if (!(s >> j & 1u)) continue;
      const std::uint32_t prev = s & ~(1u << j);
      if (prev == 0) continue;
      double best = kInf;
      for (int i = 0; i < n; ++i) {
        if (!(prev >> i & 1u)) continue;
        best = std::min(best, std::max(f[prev * stride + i] + d[i + 1][j + 1], rel(j)));
      }
      f[s * stride + j] = best;
    }
  }
  double best = kInf;
  for (int j = 0; j < n; ++j) {
    best = std::min(best, f[full * stride + j] + (closed ? d[j + 1][0] : 0.0));
  }

  // late[R][j]: latest time to have just served j with R still pending and
  // still finish by `best`. Used to recover the lexicographically smallest
  // optimal order.
  std::vector<double> late(static_cast<std::size_t>(full + 1) * stride, -kInf);
  for (int j = 0; j < n; ++j) late[j] = closed ? best - d[j + 1][0] : best;
  for (std::uint32_t r = 1; r <= full; ++r) {
    for (int j = 0; j < n; ++j) {
      if (r >> j & 1u) continue;
      double v = -kInf;
      for (int k = 0; k < n; ++k) {
        if (!(r >> k & 1u)) continue;
        const double lk = late[(r & ~(1u << k)) * stride + k];
        if (rel(k) <= lk + kEps) v = std::max(v, lk - d[j + 1][k + 1]);
      }
      late[r * stride + j] = v;
    }
  }
  std::vector<int> order;
  std::uint32_t remaining = full;
  double t = 0.0;
  int cur = 0;  // table index, 0 = origin
  const double tol = kEps * std::max(1.0, best);
  while (remaining != 0) {
    int pick = -1;
    for (int k = 0; k < n; ++k) {
      if (!(remaining >> k & 1u)) continue;
      const double arrive = std::max(t + d[cur][k + 1], rel(k));
      if (arrive <= late[(remaining & ~(1u << k)) * stride + k] + tol) {
        pick = k;
        break;
      }
    }
    if (pick < 0) throw std::logic_error("oracle reconstruction failed");
    t = std::max(t + d[cur][pick + 1], rel(pick));
    remaining &= ~(1u << pick);
    cur = pick + 1;
    order.push_back(pick + 1);
  }
  OptResult res = fold_order(inst, d, order);
  res.makespan = best;
  return res;
}

OptResult opt_bruteforce(const Instance& inst) {
  const int n = inst.size();
  if (n > kBruteForceCap) {
    throw std::invalid_argument("brute force supports at most " + std::to_string(kBruteForceCap) +
                                " requests (got " + std::to_string(n) + ")");
  }
  const Matrix d = distance_table(inst);
  std::vector<double> release{0.0};
  for (const Request& r : inst.requests) release.push_back(r.release);
  const bool closed = inst.variant == Variant::Closed;

  auto fold = [&](const std::vector<int>& order) {
    double t = 0.0;
    int prev = 0;
    for (int id : order) {
      t = std::max(t + d[prev][id], release[id]);
      prev = id;
    }
    return closed ? t + d[prev][0] : t;
  };

  // Pass one finds the exact minimum; pass two reports the lexicographically
  // first order within tolerance of it, the same rule the DP uses.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  double best = kInf;
  do best = std::min(best, fold(order));
  while (std::next_permutation(order.begin(), order.end()));

  const double tol = kEps * std::max(1.0, best);
  std::iota(order.begin(), order.end(), 1);
  while (fold(order) > best + tol) std::next_permutation(order.begin(), order.end());
  OptResult res = fold_order(inst, d, order);
  res.makespan = best;
  return res;
}

}  // namespace oltsp
