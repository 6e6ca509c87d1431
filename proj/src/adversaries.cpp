#include "oltsp/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oltsp/oracle.hpp"

namespace oltsp {

namespace {

constexpr double kTol = 1e-12;

void check_epsilon(double eps, const char* who) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument(std::string(who) + " needs 0 < epsilon <= 1");
  }
}

// Two requests a third of the ring apart; the one behind the server is
// released first.
class RingOpen : public Adversary {
 public:
  std::string name() const override { return "ring-open"; }

  Announcement announce() const override {
    Announcement a;
    a.space = MetricSpace::ring(1.0);
    a.variant = Variant::Open;
    a.knowledge = Knowledge::LocationsKnown;
    a.n = 2;
    a.locations = {b_, a_};
    return a;
  }

  std::optional<double> next_wake(double now) const override {
    if (decided_ || now > 1.0 / 3.0) return std::nullopt;
    return 1.0 / 3.0;
  }

  std::vector<Request> on_event(double now, const Point& position,
                                std::span<const RequestStatus>) override {
    if (decided_ || now < 1.0 / 3.0 - kTol) return {};
    decided_ = true;
    const MetricSpace ring = MetricSpace::ring(1.0);
    const bool a_side = ring.distance(position, a_) <= ring.distance(position, b_) + kTol;
    // ids: 1 = B (clockwise 1/3), 2 = A (clockwise 2/3)
    if (a_side) return {Request{1, b_, now}, Request{2, a_, 2.0 / 3.0}};
    return {Request{2, a_, now}, Request{1, b_, 2.0 / 3.0}};
  }

  bool done() const override { return decided_; }

 private:
  Point a_ = Point::on_ring(2.0 / 3.0);
  Point b_ = Point::on_ring(1.0 / 3.0);
  bool decided_ = false;
};

// Dense requests all around the ring, then a second batch dropped on the
// part the server has already swept once its distance from O plus the
// elapsed time reaches 1.
class RingClosedCount : public Adversary {
 public:
  explicit RingClosedCount(double eps) : eps_(eps) {
    check_epsilon(eps, "ring-closed-count");
    n_ = 6 * static_cast<int>(std::ceil(1.0 / eps)) + 1;
    first_ = 4 * (n_ - 1) / 6;
    rest_ = (n_ - 1) / 3 + 1;
    const double spacing = 6.0 / (4.0 * (n_ - 1));
    if (spacing > eps / 4.0 + kTol) throw std::logic_error("ring-closed-count spacing exceeds eps/4");
  }

  std::string name() const override { return "ring-closed-count:" + std::to_string(eps_); }

  Announcement announce() const override {
    Announcement a;
    a.space = space_;
    a.variant = Variant::Closed;
    a.knowledge = Knowledge::CountKnown;
    a.n = n_;
    return a;
  }

  std::optional<double> next_wake(double now) const override {
    if (!seeded_) return now;
    if (!triggered_ && now <= 1.0) return 1.0;
    return std::nullopt;
  }

  std::optional<double> trigger_time(const MetricSpace& space, const MotionSegment& seg) const override {
    if (!seeded_ || triggered_) return std::nullopt;
    double lo = std::max(seg.start, 0.5);
    double hi = std::min(seg.end, 1.0);
    if (lo > hi) return std::nullopt;
    auto h = [&](double t) { return space.distance_from_origin(seg.position(t)) + t; };
    if (h(lo) >= 1.0 - kTol) return lo;
    if (h(hi) < 1.0 - kTol) return std::nullopt;
    // h never decreases: distance from O changes at most at unit speed.
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (h(mid) >= 1.0 - kTol ? hi : lo) = mid;
    }
    return hi;
  }

  std::vector<Request> on_event(double now, const Point& position,
                                std::span<const RequestStatus>) override {
    std::vector<Request> out;
    if (!seeded_) {
      seeded_ = true;
      for (int i = 1; i <= first_; ++i) {
        out.push_back(Request{next_id_++, Point::on_ring((i - 1) * 6.0 / (4.0 * (n_ - 1))), now});
      }
      return out;
    }
    if (triggered_ || now < 0.5 - kTol) return out;
    if (space_.distance_from_origin(position) + now < 1.0 - 1e-9) return out;
    triggered_ = true;
    const double alpha = std::clamp(now - 0.5, 0.0, 0.5);
    const double len = 0.5 - alpha;
    const bool mirror = position.x > 0.5;
    for (int j = 0; j < rest_; ++j) {
      const double y = rest_ == 1 ? 0.0 : j * len / (rest_ - 1);
      out.push_back(Request{next_id_++, space_.normalize(Point::on_ring(mirror ? 1.0 - y : y)), now});
    }
    return out;
  }

  bool done() const override { return triggered_; }

 private:
  double eps_;
  MetricSpace space_ = MetricSpace::ring(1.0);
  int n_ = 0;
  int first_ = 0;
  int rest_ = 0;
  int next_id_ = 1;
  bool seeded_ = false;
  bool triggered_ = false;
};

// Requests at the tips of k unit rays, refreshed two time units after each
// service until 2k - 1; leftover budget lands at O.
class StarCount : public Adversary {
 public:
  StarCount(double eps, Variant variant) : eps_(eps), variant_(variant) {
    check_epsilon(eps, "star-count");
    n_ = static_cast<int>(std::ceil(7.0 / eps));
    k_ = n_ / 2;
    t_star_ = 2.0 * k_ - 1.0;
    space_ = MetricSpace::star(k_);
  }

  std::string name() const override { return "star-count:" + std::to_string(eps_); }

  Announcement announce() const override {
    Announcement a;
    a.space = space_;
    a.variant = variant_;
    a.knowledge = Knowledge::CountKnown;
    a.n = n_;
    return a;
  }

  std::optional<double> next_wake(double now) const override {
    if (!seeded_) return std::max(now, 1.0);
    if (!flushed_) return std::max(now, t_star_);
    return std::nullopt;
  }

  std::vector<Request> on_event(double now, const Point&,
                                std::span<const RequestStatus> requests) override {
    std::vector<Request> out;
    if (!seeded_) {
      if (now < 1.0 - kTol) return out;
      seeded_ = true;
      for (int i = 0; i < k_; ++i) emit(out, Point::on_star(i, 1.0), now);
    }
    for (const RequestStatus& r : requests) {
      if (!r.served || r.id > static_cast<int>(where_.size())) continue;
      auto& seen = seen_[static_cast<std::size_t>(r.id - 1)];
      if (seen) continue;
      seen = 1;
      const Point p = where_[static_cast<std::size_t>(r.id - 1)];
      if (now < t_star_ - kTol && p.x > 0.0 && next_id_ <= n_) emit(out, p, now + 2.0);
    }
    if (!flushed_ && now >= t_star_ - kTol) {
      flushed_ = true;
      while (next_id_ <= n_) emit(out, space_.origin(), now);
    }
    return out;
  }

  bool done() const override { return flushed_; }

 private:
  void emit(std::vector<Request>& out, const Point& p, double release) {
    out.push_back(Request{next_id_++, p, release});
    where_.push_back(p);
    seen_.push_back(0);
  }

  double eps_;
  Variant variant_;
  MetricSpace space_;
  int n_ = 0;
  int k_ = 0;
  double t_star_ = 0.0;
  int next_id_ = 1;
  bool seeded_ = false;
  bool flushed_ = false;
  std::vector<Point> where_;
  std::vector<char> seen_;
};

// Four fixed locations on [0, 1]; release order chosen from the server
// position at t = 1 and t = 7/6.
class SemilineOpenLoc : public Adversary {
 public:
  std::string name() const override { return "semiline-open-loc"; }

  Announcement announce() const override {
    Announcement a;
    a.space = MetricSpace::semi_line();
    a.variant = Variant::Open;
    a.knowledge = Knowledge::LocationsKnown;
    a.n = 4;
    for (double x : kSpots) a.locations.push_back(Point::on_line(x));
    return a;
  }

  std::optional<double> next_wake(double now) const override {
    if (stage_ == 0) return std::max(now, 1.0);
    if (stage_ == 1) return std::max(now, 7.0 / 6.0);
    return std::nullopt;
  }

  std::vector<Request> on_event(double now, const Point& position,
                                std::span<const RequestStatus>) override {
    std::vector<Request> out;
    if (stage_ == 0 && now >= 1.0 - kTol) {
      // Reflect so the server sits in the right half.
      mirror_ = position.x < 0.5;
      const double s = frame(position.x);
      if (s > 5.0 / 6.0) {
        out = {req(0, now), req(1, 7.0 / 6.0), req(2, 11.0 / 6.0), req(3, 2.0)};
        stage_ = 2;
      } else {
        out = {req(0, now), req(3, now)};
        stage_ = 1;
      }
    } else if (stage_ == 1 && now >= 7.0 / 6.0 - kTol) {
      const bool near_left = frame(position.x) <= 0.5;
      if (near_left) {
        out = {req(2, now), req(1, 11.0 / 6.0)};
      } else {
        out = {req(1, now), req(2, 11.0 / 6.0)};
      }
      stage_ = 2;
    }
    return out;
  }

  bool done() const override { return stage_ == 2; }

 private:
  static constexpr double kSpots[4] = {0.0, 1.0 / 6.0, 5.0 / 6.0, 1.0};

  double frame(double x) const { return mirror_ ? 1.0 - x : x; }

  // Request at frame slot i (0..3 from the frame's left end).
  Request req(int slot, double release) const {
    const int real = mirror_ ? 3 - slot : slot;
    return Request{real + 1, Point::on_line(kSpots[real]), release};
  }

  int stage_ = 0;
  bool mirror_ = false;
};

// One request, placed at t = 1 at O or at 1 depending on the server.
class SemilineCount : public Adversary {
 public:
  SemilineCount(Variant variant, double threshold) : variant_(variant), threshold_(threshold) {}

  std::string name() const override {
    return variant_ == Variant::Closed ? "semiline-closed-count" : "semiline-open-count";
  }

  Announcement announce() const override {
    Announcement a;
    a.space = MetricSpace::semi_line();
    a.variant = variant_;
    a.knowledge = Knowledge::CountKnown;
    a.n = 1;
    return a;
  }

  std::optional<double> next_wake(double now) const override {
    if (placed_) return std::nullopt;
    return std::max(now, 1.0);
  }

  std::vector<Request> on_event(double now, const Point& position,
                                std::span<const RequestStatus>) override {
    if (placed_ || now < 1.0 - kTol) return {};
    placed_ = true;
    const double x = position.x >= threshold_ ? 0.0 : 1.0;
    return {Request{1, Point::on_line(x), now}};
  }

  bool done() const override { return placed_; }

 private:
  Variant variant_;
  double threshold_;
  bool placed_ = false;
};

}  // namespace

std::unique_ptr<Adversary> make_ring_open() { return std::make_unique<RingOpen>(); }
std::unique_ptr<Adversary> make_ring_closed_count(double epsilon) {
  return std::make_unique<RingClosedCount>(epsilon);
}
std::unique_ptr<Adversary> make_star_count(double epsilon, Variant variant) {
  return std::make_unique<StarCount>(epsilon, variant);
}
std::unique_ptr<Adversary> make_semiline_open_loc() { return std::make_unique<SemilineOpenLoc>(); }
std::unique_ptr<Adversary> make_semiline_closed_count() {
  return std::make_unique<SemilineCount>(Variant::Closed, 1.0 / 3.0);
}
std::unique_ptr<Adversary> make_semiline_open_count() {
  return std::make_unique<SemilineCount>(Variant::Open, 0.5);
}

std::unique_ptr<Adversary> make_adversary(const std::string& name, std::optional<double> epsilon) {
  std::string base = name;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    base = name.substr(0, colon);
    const std::string num = name.substr(colon + 1);
    std::size_t used = 0;
    try {
      epsilon = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (num.empty() || used != num.size()) {
      throw std::invalid_argument("bad epsilon in adversary name '" + name + "'");
    }
  }
  auto need_eps = [&]() {
    if (!epsilon) throw std::invalid_argument("adversary '" + base + "' needs an epsilon");
    return *epsilon;
  };
  if (base == "ring-open") return make_ring_open();
  if (base == "ring-closed-count") return make_ring_closed_count(need_eps());
  if (base == "star-count") return make_star_count(need_eps());
  if (base == "semiline-open-loc") return make_semiline_open_loc();
  if (base == "semiline-closed-count") return make_semiline_closed_count();
  if (base == "semiline-open-count") return make_semiline_open_count();
  throw std::invalid_argument("unknown adversary: " + name);
}

std::vector<std::string> adversary_names() {
  return {"ring-open", "ring-closed-count", "star-count", "semiline-open-loc",
          "semiline-closed-count", "semiline-open-count"};
}

AdversaryRun run_adversary(Adversary& adversary, Policy& policy, const SimulationOptions& opts) {
  AdaptiveRun run = simulate_adaptive(adversary, policy, opts);
  AdversaryRun out;
  out.materialized = std::move(run.materialized);
  out.outcome = std::move(run.outcome);
  out.forced_completion = out.outcome.completion;
  out.opt_completion = opt_makespan(out.materialized).makespan;
  if (out.opt_completion > 0.0) {
    out.forced_ratio = out.forced_completion / out.opt_completion;
  } else {
    out.forced_ratio = out.forced_completion > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  return out;
}

}  // namespace oltsp
