#include <algorithm>
#include <limits>
#include <numeric>

#include "oltsp/algorithms.hpp"
#include "oltsp/oracle.hpp"
#include "policy_util.hpp"

namespace oltsp {

namespace {

// Waits at O for every release, then runs an optimal zero-release route
// through the revealed locations.
class WaitAllPolicy : public Policy {
 public:
  std::string name() const override { return "wait-all"; }
  bool needs_locations() const override { return false; }

  void init(const InstanceView& view) override {
    if (view.n > kOracleCap) {
      throw std::invalid_argument("wait-all plans with the exact oracle and supports at most " +
                                  std::to_string(kOracleCap) + " requests");
    }
    space_ = view.space;
    variant_ = view.variant;
    planned_ = false;
    order_.clear();
    next_ = 0;
  }

  Action decide(const ServerState& state) override {
    if (!planned_) {
      if (!state.all_released()) return WaitForRelease{state.lowest_unreleased()};
      plan(state);
    }
    while (next_ < order_.size() && state.request(order_[next_]).served) ++next_;
    if (next_ == order_.size()) return detail::finishing_action(space_, variant_, state, loc_);
    return MoveTo{loc_[static_cast<std::size_t>(order_[next_] - 1)], Direction::Shortest,
                  std::nullopt};
  }

 private:
  // The oracle breaks ties by id, so plan on the canonical numbering; that way a
  // run and its replay on the materialised instance pick the same route.
  void plan(const ServerState& state) {
    loc_.clear();
    for (const RequestStatus& r : state.requests) loc_.push_back(*r.point);
    std::vector<int> ids(loc_.size());
    std::iota(ids.begin(), ids.end(), 1);
    if (space_.kind() == SpaceKind::Ring || space_.kind() == SpaceKind::SemiLine) {
      std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return loc_[static_cast<std::size_t>(a - 1)].x < loc_[static_cast<std::size_t>(b - 1)].x;
      });
    }
    Instance inst;
    inst.space = space_;
    inst.variant = variant_;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      inst.requests.push_back(Request{static_cast<int>(i + 1), loc_[static_cast<std::size_t>(ids[i] - 1)], 0.0});
    }
    order_.clear();
    for (int k : opt_makespan(inst).order) order_.push_back(ids[static_cast<std::size_t>(k - 1)]);
    planned_ = true;
  }

  MetricSpace space_;
  Variant variant_ = Variant::Closed;
  bool planned_ = false;
  std::vector<Point> loc_;
  std::vector<int> order_;
  std::size_t next_ = 0;
};

// Chases the nearest released request; idles at O.
class GreedyPolicy : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  bool needs_locations() const override { return false; }

  void init(const InstanceView& view) override {
    space_ = view.space;
    variant_ = view.variant;
  }

  Action decide(const ServerState& state) override {
    int pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const RequestStatus& r : state.requests) {
      if (!r.released || r.served) continue;
      const double d = space_.distance(state.position, *r.point);
      if (d < best - kEps || (d <= best + kEps && earlier(*r.point, *state.request(pick).point))) {
        best = std::min(best, d);
        pick = r.id;
      }
    }
    if (pick != 0) return MoveTo{*state.request(pick).point, Direction::Shortest, std::nullopt};
    const Point o = space_.origin();
    if (state.all_served()) {
      if (variant_ == Variant::Closed && !detail::at(space_, state.position, o)) {
        return MoveTo{o, Direction::Shortest, std::nullopt};
      }
      return Finish{};
    }
    if (!detail::at(space_, state.position, o)) return MoveTo{o, Direction::Shortest, std::nullopt};
    return WaitForRelease{state.lowest_unreleased()};
  }

 private:
  // Ties go to the lower id. On rings and semi-lines ids follow position, and
  // comparing positions keeps that rule stable under renumbering.
  bool earlier(const Point& a, const Point& b) const {
    if (space_.kind() == SpaceKind::Ring || space_.kind() == SpaceKind::SemiLine) return a.x < b.x;
    return false;
  }

  MetricSpace space_;
  Variant variant_ = Variant::Closed;
};

}  // namespace

std::unique_ptr<Policy> make_wait_all() { return std::make_unique<WaitAllPolicy>(); }
std::unique_ptr<Policy> make_greedy() { return std::make_unique<GreedyPolicy>(); }

}  // namespace oltsp
