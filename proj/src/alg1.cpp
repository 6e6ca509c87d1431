#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "oltsp/algorithms.hpp"
#include "policy_util.hpp"

namespace oltsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Waits at O until some order has half its length behind a released prefix
// and at least half its length elapsed, then runs the order minimising
// (1 - beta) * length.
class Alg1Policy : public Policy {
 public:
  std::string name() const override { return "alg1"; }

  void init(const InstanceView& view) override {
    if (view.n > kAlg1Cap) {
      throw std::invalid_argument("alg1 enumerates orders and supports at most " +
                                  std::to_string(kAlg1Cap) + " requests (got " +
                                  std::to_string(view.n) + ")");
    }
    space_ = view.space;
    variant_ = view.variant;
    n_ = view.n;
    loc_ = detail::known_locations(view);
    std::vector<Point> pts{space_.origin()};
    pts.insert(pts.end(), loc_.begin(), loc_.end());
    dist_.assign(static_cast<std::size_t>(n_ + 1), std::vector<double>(static_cast<std::size_t>(n_ + 1)));
    for (int a = 0; a <= n_; ++a) {
      for (int b = 0; b <= n_; ++b) dist_[a][b] = space_.distance(pts[a], pts[b]);
    }

    // For every order: the set of requests that must be released before the
    // order qualifies, and its length. Keep the shortest length per set.
    min_len_.assign(std::size_t{1} << n_, kInf);
    std::vector<int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 1);
    std::vector<double> prefix(static_cast<std::size_t>(n_));
    do {
      const double len = stats(order, prefix);
      const double half = len / 2.0 - kEps * std::max(1.0, len);
      std::uint32_t need = 0;
      for (int i = 0; i < n_ && prefix[i] < half; ++i) need |= 1u << (order[i] - 1);
      min_len_[need] = std::min(min_len_[need], len);
    } while (std::next_permutation(order.begin(), order.end()));
    started_ = false;
    next_ = 0;
  }

  Action decide(const ServerState& state) override {
    if (!started_) {
      std::uint32_t released = 0;
      for (const RequestStatus& r : state.requests) {
        if (r.released) released |= 1u << (r.id - 1);
      }
      double start = kInf;
      for (std::uint32_t m = 0; m < min_len_.size(); ++m) {
        if ((m & ~released) == 0) start = std::min(start, min_len_[m] / 2.0);
      }
      if (!std::isfinite(start)) return WaitForRelease{state.lowest_unreleased()};
      if (state.now < start - kEps * std::max(1.0, start)) return WaitUntil{start};
      choose(state);
      started_ = true;
    }
    while (next_ < decision_.order.size() &&
           state.request(decision_.order[next_]).served) {
      ++next_;
    }
    if (next_ == decision_.order.size()) {
      return detail::finishing_action(space_, variant_, state, loc_);
    }
    const int id = decision_.order[next_];
    const Point& p = loc_[static_cast<std::size_t>(id - 1)];
    if (detail::at(space_, state.position, p)) return WaitForRelease{id};
    return MoveTo{p, Direction::Shortest, std::nullopt};
  }

  const Alg1Decision& decision() const { return decision_; }

 private:
  double stats(const std::vector<int>& order, std::vector<double>& prefix) const {
    double len = 0.0;
    int prev = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      len += dist_[prev][order[i]];
      prefix[i] = len;
      prev = order[i];
    }
    if (variant_ == Variant::Closed) len += dist_[prev][0];
    return len;
  }

  // Ties on the objective keep the lexicographically smaller order.
  void choose(const ServerState& state) {
    std::vector<int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), 1);
    std::vector<double> prefix(static_cast<std::size_t>(n_));
    double best_obj = kInf;
    std::vector<int> best_order;
    do {
      const double len = stats(order, prefix);
      double a = 1.0;
      if (len > 0.0) {
        for (int i = 0; i < n_; ++i) {
          if (!state.request(order[i]).released) {
            a = prefix[i] / len;
            break;
          }
        }
      }
      const double obj = (1.0 - std::min(a, 0.5)) * len;
      const double tol = kEps * std::max(1.0, std::max(obj, best_obj == kInf ? 0.0 : best_obj));
      if (obj < best_obj - tol) {
        best_obj = obj;
        best_order = order;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    decision_.start_time = state.now;
    decision_.order = best_order;
    decision_.objective = n_ == 0 ? 0.0 : best_obj;
    next_ = 0;
  }

  MetricSpace space_;
  Variant variant_ = Variant::Closed;
  int n_ = 0;
  std::vector<Point> loc_;
  Matrix dist_;
  std::vector<double> min_len_;
  bool started_ = false;
  Alg1Decision decision_;
  std::size_t next_ = 0;
};

}  // namespace

std::unique_ptr<Policy> make_alg1() { return std::make_unique<Alg1Policy>(); }

const Alg1Decision* alg1_decision(const Policy& policy) {
  if (const auto* p = dynamic_cast<const Alg1Policy*>(&policy)) return &p->decision();
  return nullptr;
}

}  // namespace oltsp
