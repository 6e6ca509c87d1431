#include <gtest/gtest.h>

#include <functional>

#include "oltsp/algorithms.hpp"
#include "oltsp/engine.hpp"
#include "oltsp/oracle.hpp"
#include "support/fixtures.hpp"

using namespace oltsp;

namespace {

// Policy driven by a lambda, for poking at engine edge cases.
class Scripted : public Policy {
 public:
  using Fn = std::function<Action(const ServerState&)>;
  explicit Scripted(Fn fn, bool needs = true) : fn_(std::move(fn)), needs_(needs) {}
  std::string name() const override { return "scripted"; }
  bool needs_locations() const override { return needs_; }
  void init(const InstanceView& view) override { view_ = view; }
  Action decide(const ServerState& s) override { return fn_(s); }
  InstanceView view_;

 private:
  Fn fn_;
  bool needs_;
};

Outcome run(const Instance& inst, Policy& p) {
  Outcome out = simulate(inst, p);
  EXPECT_TRUE(verify_outcome(inst, out).empty());
  return out;
}

}  // namespace

TEST(Simulate, Example1WithAlg1) {
  const Instance inst = fixtures::example1();
  auto p = make_alg1();
  const Outcome out = run(inst, *p);
  EXPECT_NEAR(out.completion, 15.0, kEps);
  // q2 is 2 from O on the figure graph, so it is reached at 8.
  EXPECT_NEAR(out.service_times[1], 8.0, kEps);
  EXPECT_NEAR(out.service_times[0], 11.0, kEps);
  EXPECT_NEAR(out.service_times[2], 12.0, kEps);
}

TEST(Simulate, EmptyInstanceCompletesAtZero) {
  const std::vector<Instance> empties{
      Instance{MetricSpace::ring(1.0), Variant::Closed, Knowledge::LocationsKnown, {}},
      Instance{MetricSpace::star(3), Variant::Closed, Knowledge::LocationsKnown, {}},
      Instance{MetricSpace::semi_line(), Variant::Open, Knowledge::LocationsKnown, {}},
      Instance{MetricSpace::semi_line(), Variant::Closed, Knowledge::LocationsKnown, {}}};
  for (const std::string& name : policy_names()) {
    Instance inst;
    for (const Instance& e : empties) {
      if (policy_scope_error(name, e.space.kind(), e.variant).empty()) {
        inst = e;
        break;
      }
    }
    auto p = policy_factory(name)();
    const Outcome out = run(inst, *p);
    EXPECT_EQ(out.completion, 0.0) << name;
  }
}

TEST(Simulate, Alg5SingleRequest) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Closed, {{1, 5}});
  auto p = make_alg5_semiline();
  EXPECT_NEAR(run(inst, *p).completion, 6.0, kEps);
}

TEST(Simulate, ServesOnArrivalWhenStandingOnUnreleased) {
  const Instance inst = fixtures::on_line(MetricSpace::line(), Variant::Open, {{-1, 3}});
  Scripted p([](const ServerState& s) -> Action {
    if (s.all_served()) return Finish{};
    return MoveTo{Point::on_line(-1)};
  });
  const Outcome out = run(inst, p);
  EXPECT_NEAR(out.service_times[0], 3.0, kEps);
  EXPECT_NEAR(out.completion, 3.0, kEps);
}

TEST(Simulate, ServesRequestsPassedEnRoute) {
  const Instance inst =
      fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{0.3, 0}, {0.6, 0}, {1.0, 0}});
  Scripted p([](const ServerState& s) -> Action {
    if (s.all_served()) return Finish{};
    return MoveTo{Point::on_line(1.0)};
  });
  const Outcome out = run(inst, p);
  EXPECT_NEAR(out.service_times[0], 0.3, kEps);
  EXPECT_NEAR(out.service_times[1], 0.6, kEps);
  EXPECT_NEAR(out.completion, 1.0, kEps);
}

TEST(Simulate, MoveIsInterruptedByRelease) {
  // Head right; when the left request releases at 0.5, turn around.
  const Instance inst =
      fixtures::on_line(MetricSpace::line(), Variant::Open, {{-1, 0.5}, {2, 10}});
  Scripted p([](const ServerState& s) -> Action {
    if (s.all_served()) return Finish{};
    if (s.request(1).released && !s.request(1).served) return MoveTo{Point::on_line(-1)};
    return MoveTo{Point::on_line(2)};
  });
  const Outcome out = run(inst, p);
  EXPECT_NEAR(out.service_times[0], 0.5 + 1.5, kEps);
  EXPECT_NEAR(out.service_times[1], 10.0, kEps);
}

TEST(Simulate, RejectsPrematureFinish) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{1, 0}});
  Scripted p([](const ServerState&) -> Action { return Finish{}; });
  EXPECT_THROW(simulate(inst, p), SimulationError);
}

TEST(Simulate, ClosedFinishRequiresOrigin) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Closed, {{1, 0}});
  Scripted p([](const ServerState& s) -> Action {
    if (s.all_served()) return Finish{};
    return MoveTo{Point::on_line(1)};
  });
  EXPECT_THROW(simulate(inst, p), SimulationError);
}

TEST(Simulate, RejectsWaitInThePastAndBadIds) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{1, 2}});
  Scripted past([](const ServerState& s) -> Action { return WaitUntil{s.now - 1.0}; });
  EXPECT_THROW(simulate(inst, past), SimulationError);
  Scripted bad_id([](const ServerState&) -> Action { return WaitForRelease{5}; });
  EXPECT_THROW(simulate(inst, bad_id), SimulationError);
  Scripted off_space([](const ServerState&) -> Action { return MoveTo{Point::on_line(-3)}; });
  EXPECT_THROW(simulate(inst, off_space), SimulationError);
}

TEST(Simulate, StepBudgetIsEnforced) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{1, 1e6}});
  Scripted p([](const ServerState& s) -> Action {
    return MoveTo{Point::on_line(s.position.x > 0.5 ? 0.0 : 1.0)};
  });
  SimulationOptions opts;
  opts.step_budget = 50;
  try {
    simulate(inst, p, opts);
    FAIL() << "expected SimulationError";
  } catch (const SimulationError& e) {
    EXPECT_FALSE(e.trace().empty());
  }
}

TEST(Simulate, DeadlockIsReported) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{1, 0}});
  Scripted p([](const ServerState& s) -> Action {
    if (s.all_served()) return Finish{};
    return WaitForRelease{0};
  });
  EXPECT_THROW(simulate(inst, p), SimulationError);
}

TEST(Simulate, CountKnownViewHidesLocations) {
  Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{1, 0.5}});
  inst.knowledge = Knowledge::CountKnown;
  Scripted p(
      [](const ServerState& s) -> Action {
        if (s.all_served()) return Finish{};
        if (!s.request(1).point) return WaitForRelease{1};
        return MoveTo{*s.request(1).point};
      },
      false);
  const Outcome out = run(inst, p);
  EXPECT_EQ(p.view_.n, 1);
  EXPECT_FALSE(p.view_.locations[0].has_value());
  EXPECT_NEAR(out.completion, 1.5, kEps);

  auto needs = make_alg1();
  EXPECT_FALSE(compatibility_error(*needs, Knowledge::CountKnown).empty());
  EXPECT_THROW(simulate(inst, *needs), std::invalid_argument);
}

TEST(Simulate, Deterministic) {
  GenParams g;
  g.n = 7;
  g.seed = 5;
  g.release_horizon = 2;
  const Instance inst = generate_random(g, SpaceKind::Ring);
  auto a = make_alg1();
  auto b = make_alg1();
  EXPECT_EQ(encode_outcome(inst.space, simulate(inst, *a)),
            encode_outcome(inst.space, simulate(inst, *b)));
}

TEST(Simulate, CompletionDominatesOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenParams g;
    g.n = 6;
    g.seed = seed;
    g.release_horizon = 3;
    g.variant = seed % 2 ? Variant::Open : Variant::Closed;
    for (SpaceKind k : {SpaceKind::Line, SpaceKind::Star, SpaceKind::General}) {
      const Instance inst = generate_random(g, k);
      const double opt = opt_makespan(inst).makespan;
      for (const char* name : {"alg1", "wait-all", "greedy"}) {
        auto p = policy_factory(name)();
        const Outcome out = run(inst, *p);
        EXPECT_GE(out.completion, opt - kEps) << name << " seed " << seed;
      }
    }
  }
}

TEST(PositionAt, InterpolatesMovesAndHoldsWaits) {
  const MetricSpace line = MetricSpace::semi_line();
  Trajectory t;
  t.waypoints = {{0, Point::on_line(0), WaypointTag::Wait, 0},
                 {1, Point::on_line(1), WaypointTag::Move, 0},
                 {3, Point::on_line(1), WaypointTag::Wait, 0}};
  EXPECT_NEAR(position_at(line, t, 0.5).x, 0.5, kEps);
  EXPECT_NEAR(position_at(line, t, 2.0).x, 1.0, kEps);
  EXPECT_THROW(position_at(line, t, 4.0), std::out_of_range);
}

TEST(PositionAt, RingCounterClockwise) {
  const MetricSpace ring = MetricSpace::ring(1.0);
  Trajectory t;
  t.waypoints = {{0, Point::on_ring(0), WaypointTag::Wait, 0},
                 {0.1, Point::on_ring(0.9), WaypointTag::Move, 0}};
  EXPECT_NEAR(position_at(ring, t, 0.05).x, 0.95, kEps);
}

TEST(VerifyOutcome, PrematureService) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{1, 5}});
  Outcome out;
  out.completion = 1;
  out.service_times = {1};
  out.trajectory.waypoints = {{0, Point::on_line(0), WaypointTag::Wait, 0},
                              {1, Point::on_line(1), WaypointTag::Move, 0},
                              {1, Point::on_line(1), WaypointTag::Serve, 1}};
  const Violations v = verify_outcome(inst, out);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("premature service"), std::string::npos);
}

TEST(VerifyOutcome, ClosedEndingOffOrigin) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Closed, {{1, 0}});
  Outcome out;
  out.completion = 1;
  out.service_times = {1};
  out.trajectory.waypoints = {{0, Point::on_line(0), WaypointTag::Wait, 0},
                              {1, Point::on_line(1), WaypointTag::Move, 0},
                              {1, Point::on_line(1), WaypointTag::Serve, 1}};
  bool found = false;
  for (const std::string& s : verify_outcome(inst, out)) found |= s.find("off origin") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(VerifyOutcome, SpeedViolation) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Open, {{2, 0}});
  Outcome out;
  out.completion = 1;
  out.service_times = {1};
  out.trajectory.waypoints = {{0, Point::on_line(0), WaypointTag::Wait, 0},
                              {1, Point::on_line(2), WaypointTag::Move, 0},
                              {1, Point::on_line(2), WaypointTag::Serve, 1}};
  EXPECT_FALSE(verify_outcome(inst, out).empty());
}

TEST(EncodeOutcome, HasServicesAndTrajectory) {
  const Instance inst = fixtures::on_line(MetricSpace::semi_line(), Variant::Closed, {{1, 5}});
  auto p = make_alg5_semiline();
  const std::string text = encode_outcome(inst.space, simulate(inst, *p));
  EXPECT_NE(text.find("\"completion\""), std::string::npos);
  EXPECT_NE(text.find("\"services\""), std::string::npos);
  EXPECT_NE(text.find("serve:1"), std::string::npos);
}
