#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "oltsp/algorithms.hpp"
#include "policy_util.hpp"

namespace oltsp {

namespace {

using detail::Leg;

Direction opposite(Direction d) {
  return d == Direction::Clockwise ? Direction::CounterClockwise : Direction::Clockwise;
}

// Closed ring strategy. Instances whose points fit in less than half the
// ring are handed to alg1.
class Alg2RingPolicy : public Policy {
 public:
  std::string name() const override { return "alg2-ring"; }

  void init(const InstanceView& view) override {
    if (view.space.kind() != SpaceKind::Ring || view.variant != Variant::Closed) {
      throw std::invalid_argument("alg2-ring needs a closed ring instance");
    }
    space_ = view.space;
    c_ = space_.circumference();
    loc_ = detail::known_locations(view);
    legs_.clear();
    delegate_.reset();
    phase_ = Phase::Legs;

    std::vector<double> xs;
    for (const Point& p : loc_) {
      if (p.x > 0.0) xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) {
      phase_ = Phase::Done;
      return;
    }

    double widest = std::max(xs.front(), c_ - xs.back());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) widest = std::max(widest, xs[i + 1] - xs[i]);
    if (widest > c_ / 2.0 + kEps) {
      delegate_ = make_alg1();
      delegate_->init(view);
      return;
    }

    // A wide gap between neighbouring requests: skip it on the way out.
    const double third = c_ / 3.0 - kEps;
    int gap = -1;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (xs[i + 1] - xs[i] < third) continue;
      const double near = std::min(xs[i], c_ - xs[i + 1]);
      if (near < nearest) {
        nearest = near;
        gap = static_cast<int>(i);
      }
    }
    if (gap >= 0) {
      const Point lo = Point::on_ring(xs[static_cast<std::size_t>(gap)]);
      const Point hi = Point::on_ring(xs[static_cast<std::size_t>(gap) + 1]);
      const Point o = space_.origin();
      const Direction cw = Direction::Clockwise;
      const Direction ccw = Direction::CounterClockwise;
      if (lo.x <= c_ - hi.x) {
        legs_ = {Leg{hi, cw, false}, Leg{o, cw, true}, Leg{lo, cw, false}, Leg{o, ccw, true}};
      } else {
        legs_ = {Leg{lo, ccw, false}, Leg{o, ccw, true}, Leg{hi, ccw, false}, Leg{o, cw, true}};
      }
      return;
    }
    phase_ = Phase::WaitWindow;
  }

  Action decide(const ServerState& state) override {
    if (delegate_) return delegate_->decide(state);
    if (phase_ == Phase::WaitWindow) {
      if (!open_window(state)) return WaitForRelease{state.lowest_unreleased()};
    }
    while (true) {
      while (!legs_.empty()) {
        if (auto a = detail::leg_action(space_, state, loc_, legs_.front())) return *a;
        legs_.pop_front();
      }
      if (phase_ == Phase::BackToOrigin) {
        phase_ = Phase::Done;
        const int far = farthest_unserved(state, dir_);
        if (far != 0) {
          const Point p = loc_[static_cast<std::size_t>(far - 1)];
          legs_ = {Leg{p, dir_, false}, Leg{space_.origin(), opposite(dir_), true}};
          continue;
        }
      }
      return detail::finishing_action(space_, Variant::Closed, state, loc_);
    }
  }

 private:
  enum class Phase { WaitWindow, Legs, BackToOrigin, Done };

  // Looks for a window of length C/3 inside one half of the ring whose
  // requests are all released; on success queues the route through it.
  bool open_window(const ServerState& state) {
    const double half = c_ / 2.0;
    const double third = c_ / 3.0;
    std::vector<double> first{0.0, half};
    std::vector<double> second{half, c_};
    for (const RequestStatus& r : state.requests) {
      if (r.released) continue;
      const double x = loc_[static_cast<std::size_t>(r.id - 1)].x;
      if (x > 0.0 && x <= half) first.push_back(x);
      if (x >= half) second.push_back(x);
    }
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    double far1 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < first.size(); ++i) {
      if (first[i + 1] - first[i] >= third - kEps) {
        far1 = first[i] + third;
        break;
      }
    }
    double far2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = second.size() - 1; i > 0; --i) {
      if (second[i] - second[i - 1] >= third - kEps) {
        far2 = c_ - second[i] + third;
        break;
      }
    }
    if (!std::isfinite(far1) && !std::isfinite(far2)) return false;
    Point extremity;
    if (far1 <= far2) {
      dir_ = Direction::Clockwise;
      extremity = space_.normalize(Point::on_ring(far1));
    } else {
      dir_ = Direction::CounterClockwise;
      extremity = space_.normalize(Point::on_ring(c_ - far2));
    }
    legs_ = {Leg{extremity, dir_, false}, Leg{space_.origin(), dir_, true}};
    phase_ = Phase::BackToOrigin;
    return true;
  }

  int farthest_unserved(const ServerState& state, Direction dir) const {
    int pick = 0;
    double best = -1.0;
    for (const RequestStatus& r : state.requests) {
      if (r.served) continue;
      const double arc = space_.path_length(space_.origin(), loc_[static_cast<std::size_t>(r.id - 1)], dir);
      if (arc > best) {
        best = arc;
        pick = r.id;
      }
    }
    return best > 0.0 ? pick : 0;
  }

  MetricSpace space_;
  double c_ = 1.0;
  std::vector<Point> loc_;
  std::deque<Leg> legs_;
  std::unique_ptr<Policy> delegate_;
  Phase phase_ = Phase::Legs;
  Direction dir_ = Direction::Clockwise;
};

}  // namespace

std::unique_ptr<Policy> make_alg2_ring() { return std::make_unique<Alg2RingPolicy>(); }

}  // namespace oltsp
