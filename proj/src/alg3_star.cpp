#include <algorithm>
#include <deque>
#include <stdexcept>

#include "oltsp/algorithms.hpp"
#include "policy_util.hpp"

namespace oltsp {

namespace {

using detail::Leg;

// Closed star strategy: either one long ray is handled at once, or the
// server waits until the total ray length and then clears a knapsack-chosen
// set of mostly released rays before the final sweeps.
class Alg3StarPolicy : public Policy {
 public:
  explicit Alg3StarPolicy(KnapsackMode mode) : mode_(mode) {}

  std::string name() const override {
    return mode_.exact ? "alg3-star:exact" : "alg3-star:fptas=" + std::to_string(mode_.epsilon);
  }

  void init(const InstanceView& view) override {
    if (view.space.kind() != SpaceKind::Star || view.variant != Variant::Closed) {
      throw std::invalid_argument("alg3-star needs a closed star instance");
    }
    space_ = view.space;
    loc_ = detail::known_locations(view);
    const int k = space_.ray_count();
    depth_.assign(static_cast<std::size_t>(k), 0.0);
    for (const Point& p : loc_) {
      auto& d = depth_[static_cast<std::size_t>(p.ray)];
      d = std::max(d, p.x);
    }
    total_ = 0.0;
    for (double r : depth_) total_ += r;
    legs_.clear();
    phase_ = Phase::Wait;
    selected_.clear();

    int longest = 0;
    for (int j = 1; j < k; ++j) {
      if (depth_[static_cast<std::size_t>(j)] > depth_[static_cast<std::size_t>(longest)]) longest = j;
    }
    if (depth_[static_cast<std::size_t>(longest)] >= total_ / 4.0 - kEps) {
      const Point tip = extremity(longest);
      legs_ = {Leg{tip, Direction::Shortest, false}, Leg{space_.origin(), Direction::Shortest, true}};
      phase_ = Phase::Legs;
    }
  }

  Action decide(const ServerState& state) override {
    while (true) {
      switch (phase_) {
        case Phase::Wait:
          if (state.now < total_ - kEps * std::max(1.0, total_)) return WaitUntil{total_};
          select(state);
          phase_ = Phase::Legs;
          break;
        case Phase::Legs:
          while (!legs_.empty()) {
            if (auto a = detail::leg_action(space_, state, loc_, legs_.front())) return *a;
            legs_.pop_front();
          }
          phase_ = Phase::WaitAll;
          break;
        case Phase::WaitAll:
          if (!state.all_released()) {
            if (!detail::at(space_, state.position, space_.origin())) {
              return MoveTo{space_.origin(), Direction::Shortest, std::nullopt};
            }
            return WaitForRelease{state.lowest_unreleased()};
          }
          queue_sweeps(state);
          phase_ = Phase::Sweeps;
          break;
        case Phase::Sweeps:
          while (!legs_.empty()) {
            if (auto a = detail::leg_action(space_, state, loc_, legs_.front())) return *a;
            legs_.pop_front();
          }
          return detail::finishing_action(space_, Variant::Closed, state, loc_);
      }
    }
  }

  const std::vector<int>& selected() const { return selected_; }

 private:
  enum class Phase { Wait, Legs, WaitAll, Sweeps };

  Point extremity(int ray) const {
    return space_.normalize(Point::on_star(ray, depth_[static_cast<std::size_t>(ray)]));
  }

  // Rays chosen by value = released stretch measured from the tip.
  void select(const ServerState& state) {
    std::vector<double> pending(depth_.size(), 0.0);
    for (const RequestStatus& r : state.requests) {
      if (r.released) continue;
      const Point& p = loc_[static_cast<std::size_t>(r.id - 1)];
      auto& d = pending[static_cast<std::size_t>(p.ray)];
      d = std::max(d, p.x);
    }
    std::vector<KnapsackItem> items;
    for (std::size_t j = 0; j < depth_.size(); ++j) {
      if (depth_[j] <= 0.0) continue;
      items.push_back(KnapsackItem{static_cast<int>(j), depth_[j], depth_[j] - pending[j]});
    }
    selected_ = knapsack_select(items, total_ / 2.0, mode_).indices;
    for (int ray : selected_) {
      legs_.push_back(Leg{extremity(ray), Direction::Shortest, false});
      legs_.push_back(Leg{space_.origin(), Direction::Shortest, false});
    }
  }

  void queue_sweeps(const ServerState& state) {
    std::vector<double> deepest(depth_.size(), 0.0);
    for (const RequestStatus& r : state.requests) {
      if (r.served) continue;
      const Point& p = loc_[static_cast<std::size_t>(r.id - 1)];
      auto& d = deepest[static_cast<std::size_t>(p.ray)];
      d = std::max(d, p.x);
    }
    for (std::size_t j = 0; j < deepest.size(); ++j) {
      if (deepest[j] <= 0.0) continue;
      legs_.push_back(Leg{Point::on_star(static_cast<int>(j), deepest[j]), Direction::Shortest, false});
      legs_.push_back(Leg{space_.origin(), Direction::Shortest, false});
    }
  }

  KnapsackMode mode_;
  MetricSpace space_;
  std::vector<Point> loc_;
  std::vector<double> depth_;
  double total_ = 0.0;
  std::deque<Leg> legs_;
  Phase phase_ = Phase::Wait;
  std::vector<int> selected_;
};

}  // namespace

std::unique_ptr<Policy> make_alg3_star(KnapsackMode mode) {
  return std::make_unique<Alg3StarPolicy>(mode);
}

}  // namespace oltsp
