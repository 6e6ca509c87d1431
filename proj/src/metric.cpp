#include "oltsp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oltsp {

const char* to_string(Variant v) { return v == Variant::Open ? "open" : "closed"; }

const char* to_string(Knowledge k) {
  return k == Knowledge::LocationsKnown ? "locations" : "count";
}

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::SemiLine: return "semiline";
    case SpaceKind::Line: return "line";
    case SpaceKind::Ring: return "ring";
    case SpaceKind::Star: return "star";
    case SpaceKind::General: return "general";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "semiline") return SpaceKind::SemiLine;
  if (s == "line") return SpaceKind::Line;
  if (s == "ring") return SpaceKind::Ring;
  if (s == "star") return SpaceKind::Star;
  if (s == "general") return SpaceKind::General;
  throw std::invalid_argument("unknown space kind: " + s);
}

MetricSpace MetricSpace::semi_line() {
  MetricSpace s;
  s.kind_ = SpaceKind::SemiLine;
  return s;
}

MetricSpace MetricSpace::line() {
  MetricSpace s;
  s.kind_ = SpaceKind::Line;
  return s;
}

MetricSpace MetricSpace::ring(double circumference) {
  if (!(circumference > 0.0) || !std::isfinite(circumference)) {
    throw std::invalid_argument("ring circumference must be positive");
  }
  MetricSpace s;
  s.kind_ = SpaceKind::Ring;
  s.circumference_ = circumference;
  return s;
}

MetricSpace MetricSpace::star(int ray_count) {
  if (ray_count < 1) throw std::invalid_argument("star needs at least one ray");
  MetricSpace s;
  s.kind_ = SpaceKind::Star;
  s.ray_count_ = ray_count;
  return s;
}

MetricSpace MetricSpace::general(Matrix matrix, bool symmetric) {
  if (matrix.empty()) throw std::invalid_argument("general space needs at least the origin node");
  for (const auto& row : matrix) {
    if (row.size() != matrix.size()) throw std::invalid_argument("distance matrix must be square");
  }
  MetricSpace s;
  s.kind_ = SpaceKind::General;
  s.matrix_ = std::move(matrix);
  s.symmetric_ = symmetric;
  return s;
}

Point MetricSpace::origin() const {
  switch (kind_) {
    case SpaceKind::Star: return Point::on_star(0, 0.0);
    case SpaceKind::General: return Point::at_node(0);
    default: return Point::on_line(0.0);
  }
}

bool MetricSpace::contains(const Point& p) const {
  if (!std::isfinite(p.x)) return false;
  switch (kind_) {
    case SpaceKind::SemiLine: return p.x >= 0.0;
    case SpaceKind::Line: return true;
    case SpaceKind::Ring: return p.x >= 0.0 && p.x < circumference_;
    case SpaceKind::Star: return p.ray >= 0 && p.ray < ray_count_ && p.x >= 0.0;
    case SpaceKind::General: {
      const int m = node_count();
      if (p.node < 0 || p.node >= m) return false;
      if (!p.mid_edge()) return true;
      if (p.to >= m) return false;
      return p.x >= 0.0 && p.x <= matrix_[p.node][p.to];
    }
  }
  return false;
}

void MetricSpace::check_point(const Point& p) const {
  if (!contains(p)) {
    std::ostringstream os;
    os << "point outside " << to_string(kind_) << " domain (x=" << p.x << ", ray=" << p.ray
       << ", node=" << p.node << ", to=" << p.to << ")";
    throw std::invalid_argument(os.str());
  }
}

Point MetricSpace::normalize(const Point& p) const {
  switch (kind_) {
    case SpaceKind::SemiLine:
    case SpaceKind::Line: return Point::on_line(p.x);
    case SpaceKind::Ring: {
      double x = std::fmod(p.x, circumference_);
      if (x < 0.0) x += circumference_;
      if (x >= circumference_) x = 0.0;
      return Point::on_ring(x);
    }
    case SpaceKind::Star:
      return p.x == 0.0 ? Point::on_star(0, 0.0) : Point::on_star(p.ray, p.x);
    case SpaceKind::General: {
      if (!p.mid_edge()) return Point::at_node(p.node);
      const double len = matrix_[p.node][p.to];
      if (p.x <= kEps) return Point::at_node(p.node);
      if (p.x >= len - kEps) return Point::at_node(p.to);
      return p;
    }
  }
  return p;
}

double MetricSpace::ring_arc(double from, double to, Direction dir) const {
  if (dir == Direction::Shortest) {
    // |from - to| keeps d(a,b) == d(b,a) bit for bit.
    const double gap = std::abs(to - from);
    return std::min(gap, circumference_ - gap);
  }
  double cw = std::fmod(to - from, circumference_);
  if (cw < 0.0) cw += circumference_;
  if (cw >= circumference_) cw = 0.0;
  const double ccw = cw == 0.0 ? 0.0 : circumference_ - cw;
  switch (dir) {
    case Direction::Clockwise: return cw;
    case Direction::CounterClockwise: return ccw;
    case Direction::Shortest: break;
  }
  return cw;
}

Direction MetricSpace::resolve(const Point& a, const Point& b, Direction dir) const {
  if (kind_ != SpaceKind::Ring || dir != Direction::Shortest) return dir;
  const double cw = ring_arc(a.x, b.x, Direction::Clockwise);
  return cw <= circumference_ - cw ? Direction::Clockwise : Direction::CounterClockwise;
}

namespace {

// Best route between two general-space points: an optional leg along a's edge
// to node n1, the direct edge n1 -> n2, and an optional leg into b's edge.
struct Route {
  double total = 0.0;
  bool same_edge = false;
  int n1 = 0;
  double c1 = 0.0;
  bool a_forward = true;
  int n2 = 0;
  double mid = 0.0;
  bool b_from_start = true;
};

struct Exit {
  int node;
  double cost;
  bool forward;
};

}  // namespace

static Route general_route(const Matrix& m, bool symmetric, const Point& a, const Point& b) {
  std::vector<Exit> exits;
  if (a.mid_edge()) {
    exits.push_back({a.to, m[a.node][a.to] - a.x, true});
    exits.push_back({a.node, a.x, false});
  } else {
    exits.push_back({a.node, 0.0, true});
  }
  std::vector<Exit> entries;
  if (b.mid_edge()) {
    entries.push_back({b.node, b.x, true});
    entries.push_back({b.to, m[b.node][b.to] - b.x, false});
  } else {
    entries.push_back({b.node, 0.0, true});
  }
  Route best;
  best.total = std::numeric_limits<double>::infinity();
  for (const Exit& ex : exits) {
    for (const Exit& en : entries) {
      const double mid = ex.node == en.node ? 0.0 : m[ex.node][en.node];
      const double total = ex.cost + mid + en.cost;
      if (total < best.total) {
        best = Route{total, false, ex.node, ex.cost, ex.forward, en.node, mid, en.forward};
      }
    }
  }
  if (a.mid_edge() && b.mid_edge()) {
    double direct = -1.0;
    if (a.node == b.node && a.to == b.to) {
      direct = std::abs(a.x - b.x);
    } else if (symmetric && a.node == b.to && a.to == b.node) {
      direct = std::abs(a.x - (m[b.node][b.to] - b.x));
    }
    if (direct >= 0.0 && direct <= best.total) {
      best = Route{};
      best.total = direct;
      best.same_edge = true;
    }
  }
  return best;
}

double MetricSpace::general_distance(const Point& a, const Point& b) const {
  if (!a.mid_edge() && !b.mid_edge()) return a.node == b.node ? 0.0 : matrix_[a.node][b.node];
  return general_route(matrix_, symmetric_, a, b).total;
}

Point MetricSpace::general_along(const Point& a, const Point& b, double e) const {
  if (!a.mid_edge() && !b.mid_edge()) {
    if (a.node == b.node) return a;
    return normalize(Point::on_edge(a.node, b.node, e));
  }
  const Route r = general_route(matrix_, symmetric_, a, b);
  if (r.same_edge) {
    // b lies on a's edge (possibly stored reversed).
    const double target = (a.node == b.node) ? b.x : matrix_[b.node][b.to] - b.x;
    const double x = target >= a.x ? a.x + e : a.x - e;
    return normalize(Point::on_edge(a.node, a.to, x));
  }
  if (a.mid_edge() && e <= r.c1) {
    return normalize(Point::on_edge(a.node, a.to, r.a_forward ? a.x + e : a.x - e));
  }
  const double after_first = e - r.c1;
  if (after_first <= r.mid) {
    if (r.n1 == r.n2) return Point::at_node(r.n1);
    return normalize(Point::on_edge(r.n1, r.n2, after_first));
  }
  const double into_b = after_first - r.mid;
  if (!b.mid_edge()) return b;
  const double len = matrix_[b.node][b.to];
  return normalize(Point::on_edge(b.node, b.to, r.b_from_start ? into_b : len - into_b));
}

std::optional<double> MetricSpace::general_offset(const Point& a, const Point& b,
                                                  const Point& c) const {
  if (c.mid_edge()) {
    if (same_point(a, c)) return 0.0;
    if (same_point(b, c)) return general_distance(a, b);
    return std::nullopt;
  }
  if (!a.mid_edge() && a.node == c.node) return 0.0;
  const Route r = general_route(matrix_, symmetric_, a, b);
  if (r.same_edge) {
    if (!b.mid_edge() && b.node == c.node) return r.total;
    return std::nullopt;
  }
  if (a.mid_edge() && r.n1 == c.node) return r.c1;
  if (r.n2 == c.node) return r.c1 + r.mid;
  if (!b.mid_edge() && b.node == c.node) return r.total;
  return std::nullopt;
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  check_point(a);
  check_point(b);
  switch (kind_) {
    case SpaceKind::SemiLine:
    case SpaceKind::Line: return std::abs(a.x - b.x);
    case SpaceKind::Ring: return ring_arc(a.x, b.x, Direction::Shortest);
    case SpaceKind::Star:
      if (a.x == 0.0 || b.x == 0.0 || a.ray == b.ray) return std::abs(a.x - b.x);
      return a.x + b.x;
    case SpaceKind::General: return general_distance(a, b);
  }
  return 0.0;
}

bool MetricSpace::same_point(const Point& a, const Point& b, double tol) const {
  return distance(a, b) <= tol;
}

double MetricSpace::path_length(const Point& a, const Point& b, Direction dir) const {
  if (kind_ == SpaceKind::Ring) return ring_arc(a.x, b.x, resolve(a, b, dir));
  return distance(a, b);
}

Point MetricSpace::along(const Point& a, const Point& b, Direction dir, double e) const {
  const double len = path_length(a, b, dir);
  if (e <= 0.0) return a;
  if (e >= len) return b;
  switch (kind_) {
    case SpaceKind::SemiLine:
    case SpaceKind::Line: {
      const double x = b.x >= a.x ? a.x + e : a.x - e;
      return Point::on_line(kind_ == SpaceKind::SemiLine ? std::max(0.0, x) : x);
    }
    case SpaceKind::Ring: {
      const Direction d = resolve(a, b, dir);
      return normalize(Point::on_ring(d == Direction::Clockwise ? a.x + e : a.x - e));
    }
    case SpaceKind::Star: {
      if (a.x == 0.0 || b.x == 0.0 || a.ray == b.ray) {
        const int ray = a.x > 0.0 ? a.ray : b.ray;
        const double x = b.x >= a.x ? a.x + e : a.x - e;
        return normalize(Point::on_star(ray, std::max(0.0, x)));
      }
      if (e <= a.x) return normalize(Point::on_star(a.ray, a.x - e));
      return normalize(Point::on_star(b.ray, e - a.x));
    }
    case SpaceKind::General: return general_along(a, b, e);
  }
  return b;
}

Point MetricSpace::travel(const Point& a, const Point& b, double elapsed) const {
  const double len = distance(a, b);
  if (elapsed < 0.0 || elapsed > len + kEps) {
    std::ostringstream os;
    os << "travel: elapsed " << elapsed << " outside [0, " << len << "]";
    throw std::invalid_argument(os.str());
  }
  return along(a, b, Direction::Shortest, std::min(elapsed, len));
}

std::optional<double> MetricSpace::offset_on_path(const Point& a, const Point& b, Direction dir,
                                                  const Point& c) const {
  switch (kind_) {
    case SpaceKind::Ring: {
      const Direction d = resolve(a, b, dir);
      const double len = ring_arc(a.x, b.x, d);
      double off = ring_arc(a.x, c.x, d);
      if (circumference_ - off <= kEps) off = 0.0;
      if (off <= len + kEps) return std::min(off, len);
      return std::nullopt;
    }
    case SpaceKind::General: return general_offset(a, b, c);
    default: {
      // Lines and stars are trees: the geodesic is unique.
      const double ac = distance(a, c);
      if (ac + distance(c, b) <= distance(a, b) + kEps) return ac;
      return std::nullopt;
    }
  }
}

Violations MetricSpace::validate() const {
  Violations out;
  switch (kind_) {
    case SpaceKind::Ring:
      if (!(circumference_ > 0.0)) out.push_back("ring circumference must be > 0");
      break;
    case SpaceKind::Star:
      if (ray_count_ < 1) out.push_back("star rayCount must be >= 1");
      break;
    case SpaceKind::General: {
      const std::size_t m = matrix_.size();
      double scale = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (matrix_[i].size() != m) {
          out.push_back("matrix row " + std::to_string(i) + " has wrong length");
          return out;
        }
        for (double v : matrix_[i]) scale = std::max(scale, std::abs(v));
      }
      const double tol = kEps * scale;
      for (std::size_t i = 0; i < m; ++i) {
        if (matrix_[i][i] != 0.0) out.push_back("nonzero diagonal at " + std::to_string(i));
        for (std::size_t j = 0; j < m; ++j) {
          const double v = matrix_[i][j];
          if (!std::isfinite(v) || v < 0.0) {
            out.push_back("invalid length d(" + std::to_string(i) + "," + std::to_string(j) + ")");
          }
          if (symmetric_ && j > i && v != matrix_[j][i]) {
            out.push_back("asymmetric pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
      }
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          for (std::size_t c = 0; c < m; ++c) {
            if (matrix_[a][b] > matrix_[a][c] + matrix_[c][b] + tol) {
              out.push_back("triangle (" + std::to_string(a) + "," + std::to_string(c) + "," +
                            std::to_string(b) + ")");
            }
          }
        }
      }
      break;
    }
    default: break;
  }
  return out;
}

}  // namespace oltsp
