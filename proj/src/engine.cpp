#include "oltsp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "json_util.hpp"

namespace oltsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(x=" << p.x << " ray=" << p.ray << " node=" << p.node;
  if (p.mid_edge()) os << "->" << p.to;
  os << ")";
  return os.str();
}

std::string describe(const Action& a) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* m = std::get_if<MoveTo>(&a)) {
    os << "MoveTo " << describe(m->target);
    if (m->deadline) os << " until " << *m->deadline;
  } else if (const auto* w = std::get_if<WaitUntil>(&a)) {
    os << "WaitUntil " << w->time;
  } else if (const auto* r = std::get_if<WaitForRelease>(&a)) {
    os << "WaitForRelease " << r->id;
  } else {
    os << "Finish";
  }
  return os.str();
}

// Shared event loop for fixed and adaptive scenarios.
class Simulator {
 public:
  Simulator(MetricSpace space, Variant variant, Knowledge knowledge, int n, Policy& policy,
            Adversary* adversary, const SimulationOptions& opts)
      : space_(std::move(space)),
        variant_(variant),
        knowledge_(knowledge),
        n_(n),
        policy_(policy),
        adversary_(adversary),
        opts_(opts),
        locations_(static_cast<std::size_t>(n)),
        releases_(static_cast<std::size_t>(n)),
        status_(static_cast<std::size_t>(n)),
        service_(static_cast<std::size_t>(n), -1.0) {
    for (int i = 0; i < n; ++i) status_[static_cast<std::size_t>(i)].id = i + 1;
    position_ = space_.origin();
  }

  void announce_location(int id, const Point& p) {
    locations_[idx(id)] = space_.normalize(p);
    if (knowledge_ == Knowledge::LocationsKnown) status_[idx(id)].point = locations_[idx(id)];
  }

  void schedule(const Request& r) {
    if (r.id < 1 || r.id > n_) fail("request id " + std::to_string(r.id) + " out of range");
    if (releases_[idx(r.id)]) fail("request " + std::to_string(r.id) + " emitted twice");
    if (!(r.release >= now_ - kEps)) {
      fail("causality violated: request " + std::to_string(r.id) + " released at " +
           std::to_string(r.release) + " < now " + std::to_string(now_));
    }
    if (!space_.contains(space_.normalize(r.point))) fail("request point outside space");
    const Point p = space_.normalize(r.point);
    if (locations_[idx(r.id)] && !space_.same_point(*locations_[idx(r.id)], p)) {
      fail("request " + std::to_string(r.id) + " emitted away from its announced location");
    }
    locations_[idx(r.id)] = p;
    if (knowledge_ == Knowledge::LocationsKnown) status_[idx(r.id)].point = p;
    releases_[idx(r.id)] = std::max(r.release, now_);
    emitted_.push_back(Request{r.id, p, *releases_[idx(r.id)]});
  }

  Outcome run() {
    InstanceView view;
    view.space = space_;
    view.variant = variant_;
    view.knowledge = knowledge_;
    view.n = n_;
    if (knowledge_ == Knowledge::LocationsKnown) {
      for (int id = 1; id <= n_; ++id) view.locations.push_back(locations_[idx(id)]);
    } else {
      view.locations.assign(static_cast<std::size_t>(n_), std::nullopt);
    }
    policy_.init(view);

    waypoints_.push_back(Waypoint{0.0, position_, WaypointTag::Wait, 0});
    settle();

    long steps = 0;
    while (true) {
      if (++steps > opts_.step_budget) {
        fail("step budget of " + std::to_string(opts_.step_budget) + " events exceeded");
      }
      poll_adversary();

      ServerState state{now_, position_, status_};
      const Action action = policy_.decide(state);
      note(describe(action));

      if (std::holds_alternative<Finish>(action)) {
        finish();
        break;
      }
      step(action);
    }

    Outcome out;
    out.completion = completion_;
    out.service_times = service_;
    out.trajectory.waypoints = waypoints_;
    return out;
  }

  const std::vector<Request>& emitted() const { return emitted_; }

 private:
  static std::size_t idx(int id) { return static_cast<std::size_t>(id - 1); }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream trace;
    trace.precision(17);
    trace << "t=" << now_ << " position=" << describe(position_) << "\n";
    for (const std::string& line : recent_) trace << "  " << line << "\n";
    throw SimulationError(what, trace.str());
  }

  void note(std::string line) {
    std::ostringstream os;
    os.precision(17);
    os << "t=" << now_ << " " << line;
    recent_.push_back(os.str());
    if (recent_.size() > 32) recent_.pop_front();
  }

  void release_due() {
    for (int id = 1; id <= n_; ++id) {
      RequestStatus& st = status_[idx(id)];
      if (!st.released && releases_[idx(id)] && *releases_[idx(id)] <= now_ + kEps * 1e-3) {
        st.released = true;
        st.point = locations_[idx(id)];
      }
    }
  }

  // Serve everything released at the current position. Returns true if any.
  bool serve_here() {
    bool any = false;
    for (int id = 1; id <= n_; ++id) {
      RequestStatus& st = status_[idx(id)];
      if (st.released && !st.served && space_.same_point(*locations_[idx(id)], position_)) {
        st.served = true;
        service_[idx(id)] = now_;
        waypoints_.push_back(Waypoint{now_, position_, WaypointTag::Serve, id});
        note("serve " + std::to_string(id));
        any = true;
      }
    }
    return any;
  }

  void emit_from_adversary() {
    const auto reqs = adversary_->on_event(now_, position_, status_);
    for (const Request& r : reqs) schedule(r);
  }

  // Apply releases and services at the current instant, notifying the
  // adversary after services until nothing changes.
  void settle() {
    for (int guard = 0; guard < 4 * n_ + 4; ++guard) {
      release_due();
      if (!serve_here()) return;
      if (adversary_) emit_from_adversary();
    }
  }

  void poll_adversary() {
    if (!adversary_) return;
    while (true) {
      const auto wake = adversary_->next_wake(now_);
      if (!wake || *wake > now_ + kEps * 1e-3) return;
      note("adversary wake");
      emit_from_adversary();
      settle();
      const auto again = adversary_->next_wake(now_);
      if (again && *again <= *wake) fail("adversary did not advance its wake time");
    }
  }

  double next_release_after_now() const {
    double t = kInf;
    for (int id = 1; id <= n_; ++id) {
      if (!status_[idx(id)].released && releases_[idx(id)]) t = std::min(t, *releases_[idx(id)]);
    }
    return t;
  }

  void step(const Action& action) {
    double horizon = kInf;
    bool moving = false;
    Point target;
    Direction dir = Direction::Shortest;
    double path_len = 0.0;
    int hit_request = 0;
    double hit_time = kInf;

    if (const auto* w = std::get_if<WaitUntil>(&action)) {
      if (!(w->time >= now_ - kEps)) fail("WaitUntil in the past");
      horizon = std::max(w->time, now_);
    } else if (const auto* r = std::get_if<WaitForRelease>(&action)) {
      if (r->id < 1 || r->id > n_) fail("WaitForRelease on unknown id " + std::to_string(r->id));
      if (status_[idx(r->id)].released) {
        fail("WaitForRelease on released request " + std::to_string(r->id));
      }
      horizon = releases_[idx(r->id)] ? *releases_[idx(r->id)] : kInf;
    } else {
      const auto& m = std::get<MoveTo>(action);
      if (!space_.contains(space_.normalize(m.target))) fail("MoveTo target outside space");
      target = space_.normalize(m.target);
      dir = space_.resolve(position_, target, m.direction);
      path_len = space_.path_length(position_, target, dir);
      if (path_len <= kEps * 1e-3 && !(position_ == target)) {
        position_ = target;
        settle();
        return;
      }
      if (path_len <= kEps * 1e-3) {
        // Already there: hold until something happens.
        horizon = m.deadline ? std::max(*m.deadline, now_) : kInf;
      } else {
        moving = true;
      }
    }
    if (moving) {
      const auto& m = std::get<MoveTo>(action);
      double leg = path_len;
      // Ring moves are cut into pieces shorter than half the circumference so
      // every trajectory segment is a shortest path.
      if (space_.kind() == SpaceKind::Ring) leg = std::min(leg, space_.circumference() / 4.0);
      horizon = now_ + leg;
      for (int id = 1; id <= n_; ++id) {
        const RequestStatus& st = status_[idx(id)];
        if (!st.released || st.served) continue;
        const auto off = space_.offset_on_path(position_, target, dir, *locations_[idx(id)]);
        if (off && *off > kEps * 1e-3 && now_ + *off < hit_time) {
          hit_time = now_ + *off;
          hit_request = id;
        }
      }
      horizon = std::min(horizon, hit_time);
      if (m.deadline) {
        if (!(*m.deadline >= now_ - kEps)) fail("MoveTo deadline in the past");
        horizon = std::min(horizon, std::max(*m.deadline, now_));
      }
    }

    double t_next = std::min(horizon, next_release_after_now());
    if (adversary_) {
      if (const auto wake = adversary_->next_wake(now_)) t_next = std::min(t_next, *wake);
    }
    if (adversary_ && t_next > now_) {
      const Point start = position_;
      const double t0 = now_;
      MotionSegment seg;
      seg.start = t0;
      seg.end = std::isfinite(t_next) ? t_next : t0 + 1e9;
      if (moving) {
        seg.position = [this, start, target, dir, t0](double t) {
          return space_.along(start, target, dir, t - t0);
        };
      } else {
        seg.position = [start](double) { return start; };
      }
      if (const auto trig = adversary_->trigger_time(space_, seg)) {
        t_next = std::min(t_next, std::max(*trig, now_));
      }
    }
    if (!std::isfinite(t_next)) fail("deadlock: policy waits for an event that never comes");

    const double dt = t_next - now_;
    if (moving) {
      if (t_next >= now_ + path_len) {
        position_ = target;
      } else if (hit_request != 0 && t_next >= hit_time) {
        position_ = *locations_[idx(hit_request)];
      } else {
        position_ = space_.along(position_, target, dir, dt);
      }
    }
    now_ = t_next;
    waypoints_.push_back(Waypoint{now_, position_, moving ? WaypointTag::Move : WaypointTag::Wait, 0});
    settle();
    // Trigger times fall between wakes; give the adversary its look.
    if (adversary_) {
      emit_from_adversary();
      settle();
    }
  }

  void finish() {
    if (adversary_ && static_cast<int>(emitted_.size()) < n_) {
      fail("Finish before every request was emitted");
    }
    for (const RequestStatus& st : status_) {
      if (!st.served) fail("Finish with request " + std::to_string(st.id) + " unserved");
    }
    if (variant_ == Variant::Closed) {
      if (!space_.same_point(position_, space_.origin())) fail("Finish off origin in closed run");
      completion_ = now_;
    } else {
      completion_ = 0.0;
      for (double t : service_) completion_ = std::max(completion_, t);
    }
  }

  MetricSpace space_;
  Variant variant_;
  Knowledge knowledge_;
  int n_;
  Policy& policy_;
  Adversary* adversary_;
  SimulationOptions opts_;

  std::vector<std::optional<Point>> locations_;
  std::vector<std::optional<double>> releases_;
  std::vector<RequestStatus> status_;
  std::vector<double> service_;
  std::vector<Request> emitted_;
  std::vector<Waypoint> waypoints_;
  std::deque<std::string> recent_;

  double now_ = 0.0;
  Point position_;
  double completion_ = 0.0;
};

}  // namespace

bool ServerState::all_served() const {
  return std::all_of(requests.begin(), requests.end(),
                     [](const RequestStatus& r) { return r.served; });
}

bool ServerState::all_released() const {
  return std::all_of(requests.begin(), requests.end(),
                     [](const RequestStatus& r) { return r.released; });
}

int ServerState::lowest_unreleased() const {
  for (const RequestStatus& r : requests) {
    if (!r.released) return r.id;
  }
  return 0;
}

std::string compatibility_error(const Policy& policy, Knowledge knowledge) {
  if (policy.needs_locations() && knowledge == Knowledge::CountKnown) {
    return "policy '" + policy.name() +
           "' needs request locations but the scenario only reveals the request count";
  }
  return {};
}

Outcome simulate(const Instance& inst, Policy& policy, const SimulationOptions& opts) {
  if (const std::string err = compatibility_error(policy, inst.knowledge); !err.empty()) {
    throw std::invalid_argument(err);
  }
  if (const Violations v = validate_instance(inst); !v.empty()) {
    throw std::invalid_argument("invalid instance: " + v.front());
  }
  Simulator sim(inst.space, inst.variant, inst.knowledge, inst.size(), policy, nullptr, opts);
  for (const Request& r : inst.requests) {
    sim.announce_location(r.id, r.point);
    sim.schedule(r);
  }
  return sim.run();
}

AdaptiveRun simulate_adaptive(Adversary& adversary, Policy& policy,
                              const SimulationOptions& opts) {
  const Announcement ann = adversary.announce();
  if (const std::string err = compatibility_error(policy, ann.knowledge); !err.empty()) {
    throw std::invalid_argument(err + " (adversary '" + adversary.name() + "')");
  }
  Simulator sim(ann.space, ann.variant, ann.knowledge, ann.n, policy, &adversary, opts);
  for (std::size_t i = 0; i < ann.locations.size(); ++i) {
    sim.announce_location(static_cast<int>(i) + 1, ann.locations[i]);
  }
  Outcome raw = sim.run();

  AdaptiveRun run;
  run.materialized.space = ann.space;
  run.materialized.variant = ann.variant;
  run.materialized.knowledge = ann.knowledge;
  run.materialized.requests = sim.emitted();
  std::sort(run.materialized.requests.begin(), run.materialized.requests.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  // Remember emission ids through canonical renumbering.
  std::vector<int> old_ids;
  for (const Request& r : run.materialized.requests) old_ids.push_back(r.id);
  const Instance before = run.materialized;
  canonicalize(run.materialized);
  std::vector<int> new_id_of(static_cast<std::size_t>(ann.n) + 1, 0);
  {
    // canonicalize is a stable sort, so replay it on (point, release, old id).
    std::vector<Request> tagged = before.requests;
    const SpaceKind kind = ann.space.kind();
    if (kind == SpaceKind::Ring || kind == SpaceKind::SemiLine) {
      std::stable_sort(tagged.begin(), tagged.end(), [](const Request& a, const Request& b) {
        if (a.point.x != b.point.x) return a.point.x < b.point.x;
        return a.release < b.release;
      });
    }
    for (std::size_t i = 0; i < tagged.size(); ++i) {
      new_id_of[static_cast<std::size_t>(tagged[i].id)] = static_cast<int>(i) + 1;
    }
  }
  run.outcome.completion = raw.completion;
  run.outcome.service_times.assign(raw.service_times.size(), -1.0);
  for (int old = 1; old <= ann.n; ++old) {
    run.outcome.service_times[static_cast<std::size_t>(new_id_of[static_cast<std::size_t>(old)] - 1)] =
        raw.service_times[static_cast<std::size_t>(old - 1)];
  }
  run.outcome.trajectory = raw.trajectory;
  for (Waypoint& w : run.outcome.trajectory.waypoints) {
    if (w.tag == WaypointTag::Serve) w.request = new_id_of[static_cast<std::size_t>(w.request)];
  }
  return run;
}

Point position_at(const MetricSpace& space, const Trajectory& traj, double t) {
  const auto& w = traj.waypoints;
  if (w.empty()) throw std::invalid_argument("empty trajectory");
  if (t < w.front().time - kEps || t > w.back().time + kEps) {
    throw std::out_of_range("time outside trajectory");
  }
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (t <= w[i].time) {
      const Waypoint& a = w[i - 1];
      const Waypoint& b = w[i];
      if (b.tag != WaypointTag::Move) return a.point;
      const double d = space.distance(a.point, b.point);
      return space.travel(a.point, b.point, std::clamp(t - a.time, 0.0, d));
    }
  }
  return w.back().point;
}

Violations verify_outcome(const Instance& inst, const Outcome& out) {
  Violations v;
  const MetricSpace& space = inst.space;
  const auto& w = out.trajectory.waypoints;
  const int n = inst.size();
  if (w.empty()) {
    v.push_back("empty trajectory");
    return v;
  }
  if (std::abs(w.front().time) > kEps || !space.same_point(w.front().point, space.origin())) {
    v.push_back("trajectory does not start at the origin at time 0");
  }
  std::vector<double> served(static_cast<std::size_t>(n), -1.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!space.contains(space.normalize(w[i].point))) {
      v.push_back("waypoint " + std::to_string(i) + " outside space");
      continue;
    }
    if (i > 0) {
      const double dt = w[i].time - w[i - 1].time;
      const double d = space.distance(w[i - 1].point, w[i].point);
      const double tol = kEps * std::max(1.0, w[i].time);
      if (dt < -tol) v.push_back("time decreases at waypoint " + std::to_string(i));
      if (d > dt + tol) v.push_back("speed violation between waypoints " + std::to_string(i - 1) +
                                    " and " + std::to_string(i));
      if (w[i].tag == WaypointTag::Move && std::abs(d - dt) > tol) {
        v.push_back("move segment " + std::to_string(i) + " is not a unit-speed shortest path");
      }
    }
    if (w[i].tag == WaypointTag::Serve) {
      const int id = w[i].request;
      if (id < 1 || id > n) {
        v.push_back("service of unknown request " + std::to_string(id));
        continue;
      }
      const Request& r = inst.request(id);
      if (served[static_cast<std::size_t>(id - 1)] >= 0.0) {
        v.push_back("request " + std::to_string(id) + " served twice");
      }
      served[static_cast<std::size_t>(id - 1)] = w[i].time;
      if (w[i].time < r.release - kEps) {
        v.push_back("premature service of request " + std::to_string(id));
      }
      if (!space.same_point(w[i].point, r.point)) {
        v.push_back("request " + std::to_string(id) + " served away from its location");
      }
    }
  }
  double last_service = 0.0;
  for (int id = 1; id <= n; ++id) {
    const double t = served[static_cast<std::size_t>(id - 1)];
    if (t < 0.0) {
      v.push_back("request " + std::to_string(id) + " never served");
      continue;
    }
    last_service = std::max(last_service, t);
    if (static_cast<int>(out.service_times.size()) != n ||
        std::abs(out.service_times[static_cast<std::size_t>(id - 1)] - t) > kEps) {
      v.push_back("service time of request " + std::to_string(id) + " disagrees with trajectory");
    }
  }
  if (inst.variant == Variant::Closed) {
    if (!space.same_point(w.back().point, space.origin())) v.push_back("closed run ends off origin");
    if (std::abs(out.completion - w.back().time) > kEps) {
      v.push_back("closed completion differs from the final return time");
    }
    if (out.completion < last_service - kEps) v.push_back("completion precedes a service");
  } else if (std::abs(out.completion - last_service) > kEps) {
    v.push_back("open completion differs from the last service time");
  }
  return v;
}

std::string encode_outcome(const MetricSpace& space, const Outcome& out) {
  using detail::Json;
  Json doc;
  doc["completion"] = out.completion;
  Json services = Json::object();
  for (std::size_t i = 0; i < out.service_times.size(); ++i) {
    services[std::to_string(i + 1)] = out.service_times[i];
  }
  doc["services"] = services;
  Json traj = Json::array();
  for (const Waypoint& w : out.trajectory.waypoints) {
    std::string tag = w.tag == WaypointTag::Move ? "move"
                      : w.tag == WaypointTag::Wait ? "wait"
                                                   : "serve:" + std::to_string(w.request);
    traj.push_back(Json::array({w.time, detail::point_to_json(space, w.point), tag}));
  }
  doc["trajectory"] = traj;
  return doc.dump(2) + "\n";
}

}  // namespace oltsp
