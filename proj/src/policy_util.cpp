#include "policy_util.hpp"

#include <limits>
#include <stdexcept>

namespace oltsp::detail {

std::optional<Action> leg_action(const MetricSpace& space, const ServerState& state,
                                 const std::vector<Point>& loc, const Leg& leg) {
  if (at(space, state.position, leg.target)) return std::nullopt;
  if (!leg.wait) return MoveTo{leg.target, leg.dir, std::nullopt};

  int stop = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const RequestStatus& r : state.requests) {
    if (r.served || r.released) continue;
    const Point& p = loc[static_cast<std::size_t>(r.id - 1)];
    const auto off = space.offset_on_path(state.position, leg.target, leg.dir, p);
    if (off && *off < best) {
      best = *off;
      stop = r.id;
    }
  }
  if (stop == 0) return MoveTo{leg.target, leg.dir, std::nullopt};
  const Point& p = loc[static_cast<std::size_t>(stop - 1)];
  if (at(space, state.position, p)) return WaitForRelease{stop};
  return MoveTo{p, leg.dir, std::nullopt};
}

Action finishing_action(const MetricSpace& space, Variant variant, const ServerState& state,
                        const std::vector<Point>& loc) {
  if (state.all_served()) {
    if (variant == Variant::Closed && !at(space, state.position, space.origin())) {
      return MoveTo{space.origin(), Direction::Shortest, std::nullopt};
    }
    return Finish{};
  }
  // Released requests first (nearest, lowest id), then the nearest pending
  // location to wait at.
  int pick = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 2 && pick == 0; ++pass) {
    for (const RequestStatus& r : state.requests) {
      if (r.served || (pass == 0 && !r.released)) continue;
      const double d = space.distance(state.position, loc[static_cast<std::size_t>(r.id - 1)]);
      if (d < best) {
        best = d;
        pick = r.id;
      }
    }
  }
  const Point& p = loc[static_cast<std::size_t>(pick - 1)];
  if (at(space, state.position, p)) return WaitForRelease{pick};
  return MoveTo{p, Direction::Shortest, std::nullopt};
}

std::vector<Point> known_locations(const InstanceView& view) {
  std::vector<Point> out;
  for (const auto& p : view.locations) {
    if (!p) throw std::invalid_argument("policy needs every request location up front");
    out.push_back(*p);
  }
  return out;
}

}  // namespace oltsp::detail
