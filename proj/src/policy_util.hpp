#pragma once

#include <optional>
#include <vector>

#include "oltsp/engine.hpp"

namespace oltsp::detail {

// A stretch of motion toward `target`. With `wait` set the server stops at
// every unreleased request on the way until it is released; otherwise it only
// serves what is already released as it passes.
struct Leg {
  Point target;
  Direction dir = Direction::Shortest;
  bool wait = false;
};

// Next action for the leg, or nullopt once the server stands on the target.
std::optional<Action> leg_action(const MetricSpace& space, const ServerState& state,
                                 const std::vector<Point>& loc, const Leg& leg);

// Serve whatever is left, then return home in closed runs and finish.
Action finishing_action(const MetricSpace& space, Variant variant, const ServerState& state,
                        const std::vector<Point>& loc);

std::vector<Point> known_locations(const InstanceView& view);

inline bool at(const MetricSpace& space, const Point& a, const Point& b) {
  return space.same_point(a, b);
}

}  // namespace oltsp::detail
