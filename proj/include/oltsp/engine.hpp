#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oltsp/common.hpp"
#include "oltsp/instance.hpp"
#include "oltsp/metric.hpp"

namespace oltsp {

// What a policy may see about one request at the current instant. The point
// is absent while the location is hidden (count-known runs before release).
struct RequestStatus {
  int id = 0;
  std::optional<Point> point;
  bool released = false;
  bool served = false;
};

struct ServerState {
  double now = 0.0;
  Point position;
  std::span<const RequestStatus> requests;  // index id - 1

  int n() const { return static_cast<int>(requests.size()); }
  const RequestStatus& request(int id) const { return requests[static_cast<std::size_t>(id - 1)]; }
  bool all_served() const;
  bool all_released() const;
  // Lowest id that is not yet released, or 0 when everything is released.
  int lowest_unreleased() const;
};

// The part of a scenario a policy learns at time 0.
struct InstanceView {
  MetricSpace space;
  Variant variant = Variant::Closed;
  Knowledge knowledge = Knowledge::LocationsKnown;
  int n = 0;
  std::vector<std::optional<Point>> locations;  // all set iff LocationsKnown
};

struct MoveTo {
  Point target;
  Direction direction = Direction::Shortest;
  // The engine re-invokes the policy no later than this time.
  std::optional<double> deadline;
};
struct WaitUntil {
  double time = 0.0;
};
struct WaitForRelease {
  int id = 0;
};
struct Finish {};

using Action = std::variant<MoveTo, WaitUntil, WaitForRelease, Finish>;

// An online algorithm. decide() is called after every event; any MoveTo may be
// replaced on the next call, which is how moves get interrupted.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual bool needs_locations() const { return true; }
  virtual void init(const InstanceView& view) = 0;
  virtual Action decide(const ServerState& state) = 0;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

enum class WaypointTag { Move, Wait, Serve };

// A waypoint closes the segment that started at the previous waypoint; Serve
// waypoints mark an instantaneous service at the current position.
struct Waypoint {
  double time = 0.0;
  Point point;
  WaypointTag tag = WaypointTag::Wait;
  int request = 0;  // Serve only
};

struct Trajectory {
  std::vector<Waypoint> waypoints;
};

struct Outcome {
  double completion = 0.0;
  std::vector<double> service_times;  // index id - 1
  Trajectory trajectory;
};

// Motion the engine is about to execute, offered to adversaries so they can
// place continuous triggers exactly.
struct MotionSegment {
  double start = 0.0;
  double end = 0.0;
  std::function<Point(double)> position;
};

struct Announcement {
  MetricSpace space;
  Variant variant = Variant::Closed;
  Knowledge knowledge = Knowledge::CountKnown;
  int n = 0;
  std::vector<Point> locations;  // size n when locations are announced
};

// An adaptive release controller.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual Announcement announce() const = 0;
  // Next pending inspection time (>= now), if any.
  virtual std::optional<double> next_wake(double now) const = 0;
  // Earliest time within the segment at which the adversary wants to act.
  virtual std::optional<double> trigger_time(const MetricSpace& space,
                                             const MotionSegment& seg) const {
    (void)space;
    (void)seg;
    return std::nullopt;
  }
  // Called at wake and trigger times and after every service. Returned
  // requests must have release >= now.
  virtual std::vector<Request> on_event(double now, const Point& position,
                                        std::span<const RequestStatus> requests) = 0;
  virtual bool done() const = 0;
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, std::string trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::string& trace() const { return trace_; }

 private:
  std::string trace_;
};

struct SimulationOptions {
  long step_budget = kDefaultStepBudget;
};

Outcome simulate(const Instance& inst, Policy& policy, const SimulationOptions& opts = {});

struct AdaptiveRun {
  Outcome outcome;       // ids refer to `materialized`
  Instance materialized; // canonical numbering
};

AdaptiveRun simulate_adaptive(Adversary& adversary, Policy& policy,
                              const SimulationOptions& opts = {});

// Rejects policy/scenario pairings that cannot run (returns an empty string
// when compatible).
std::string compatibility_error(const Policy& policy, Knowledge knowledge);

Point position_at(const MetricSpace& space, const Trajectory& traj, double t);

// Independent feasibility check of an outcome against its instance.
Violations verify_outcome(const Instance& inst, const Outcome& out);

std::string encode_outcome(const MetricSpace& space, const Outcome& out);

}  // namespace oltsp
