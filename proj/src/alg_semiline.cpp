#include <algorithm>
#include <limits>
#include <stdexcept>

#include "oltsp/algorithms.hpp"
#include "policy_util.hpp"

namespace oltsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point> semiline_locations(const InstanceView& view, Variant variant,
                                      const char* who) {
  if (view.space.kind() != SpaceKind::SemiLine || view.variant != variant) {
    throw std::invalid_argument(std::string(who) + " needs an " +
                                (variant == Variant::Open ? "open" : "closed") +
                                " semi-line instance");
  }
  return detail::known_locations(view);
}

// Unserved request with the smallest (leftmost) or largest position.
int extreme_unserved(const ServerState& state, const std::vector<Point>& loc, bool leftmost) {
  int pick = 0;
  for (const RequestStatus& r : state.requests) {
    if (r.served) continue;
    const double x = loc[static_cast<std::size_t>(r.id - 1)].x;
    if (pick == 0) {
      pick = r.id;
      continue;
    }
    const double best = loc[static_cast<std::size_t>(pick - 1)].x;
    if (leftmost ? x < best : x > best) pick = r.id;
  }
  return pick;
}

// Move to the given extreme unserved request and wait there for it.
Action sweep_step(const MetricSpace& space, const ServerState& state,
                  const std::vector<Point>& loc, bool leftmost,
                  std::optional<double> deadline = std::nullopt) {
  const int id = extreme_unserved(state, loc, leftmost);
  const Point& p = loc[static_cast<std::size_t>(id - 1)];
  if (detail::at(space, state.position, p)) {
    if (deadline) return WaitUntil{*deadline};
    return WaitForRelease{id};
  }
  return MoveTo{p, Direction::Shortest, deadline};
}

// Open semi-line strategy.
class Alg4Policy : public Policy {
 public:
  std::string name() const override { return "alg4-semiline"; }

  void init(const InstanceView& view) override {
    loc_ = semiline_locations(view, Variant::Open, "alg4-semiline");
    space_ = view.space;
    far_ = 0.0;
    for (const Point& p : loc_) far_ = std::max(far_, p.x);
    phase_ = Phase::FirstSweep;
  }

  Action decide(const ServerState& state) override {
    if (state.all_served()) return Finish{};
    const double l = far_;
    while (true) {
      switch (phase_) {
        case Phase::FirstSweep: {
          const double x = lowest_unreleased_position(state);
          const double stop = std::min(l / 2.0 + x, 3.0 * l / 4.0);
          if (state.now < stop - kEps * std::max(1.0, stop)) {
            return sweep_step(space_, state, loc_, true, stop);
          }
          phase_ = x >= l / 4.0 ? Phase::RightSweep : Phase::ToMiddle;
          break;
        }
        case Phase::ToMiddle: {
          if (released_up_to(state, l / 4.0)) {
            phase_ = Phase::RightSweep;
            break;
          }
          const Point middle = Point::on_line(l / 2.0);
          if (!detail::at(space_, state.position, middle)) {
            return MoveTo{middle, Direction::Shortest, std::nullopt};
          }
          if (released_from(state, 3.0 * l / 4.0)) {
            phase_ = Phase::ToEnd;
            break;
          }
          return WaitForRelease{state.lowest_unreleased()};
        }
        case Phase::RightSweep:
          return sweep_step(space_, state, loc_, true);
        case Phase::ToEnd: {
          const Point end = Point::on_line(l);
          if (!detail::at(space_, state.position, end)) {
            return MoveTo{end, Direction::Shortest, std::nullopt};
          }
          phase_ = Phase::LeftSweep;
          break;
        }
        case Phase::LeftSweep:
          return sweep_step(space_, state, loc_, false);
      }
    }
  }

 private:
  enum class Phase { FirstSweep, ToMiddle, RightSweep, ToEnd, LeftSweep };

  double lowest_unreleased_position(const ServerState& state) const {
    double x = kInf;
    for (const RequestStatus& r : state.requests) {
      if (!r.released) x = std::min(x, loc_[static_cast<std::size_t>(r.id - 1)].x);
    }
    return x;
  }

  bool released_up_to(const ServerState& state, double bound) const {
    for (const RequestStatus& r : state.requests) {
      if (!r.released && loc_[static_cast<std::size_t>(r.id - 1)].x <= bound) return false;
    }
    return true;
  }

  bool released_from(const ServerState& state, double bound) const {
    for (const RequestStatus& r : state.requests) {
      if (!r.released && loc_[static_cast<std::size_t>(r.id - 1)].x >= bound) return false;
    }
    return true;
  }

  MetricSpace space_;
  std::vector<Point> loc_;
  double far_ = 0.0;
  Phase phase_ = Phase::FirstSweep;
};

// Closed semi-line strategy: out to the far end, then back serving.
class Alg5Policy : public Policy {
 public:
  std::string name() const override { return "alg5-semiline"; }

  void init(const InstanceView& view) override {
    loc_ = semiline_locations(view, Variant::Closed, "alg5-semiline");
    space_ = view.space;
  }

  Action decide(const ServerState& state) override {
    if (state.all_served()) return detail::finishing_action(space_, Variant::Closed, state, loc_);
    return sweep_step(space_, state, loc_, false);
  }

 private:
  MetricSpace space_;
  std::vector<Point> loc_;
};

}  // namespace

std::unique_ptr<Policy> make_alg4_semiline() { return std::make_unique<Alg4Policy>(); }
std::unique_ptr<Policy> make_alg5_semiline() { return std::make_unique<Alg5Policy>(); }

}  // namespace oltsp
