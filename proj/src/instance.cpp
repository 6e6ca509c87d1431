#include "oltsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace oltsp {

double Instance::max_release() const {
  double m = 0.0;
  for (const Request& r : requests) m = std::max(m, r.release);
  return m;
}

Violations validate_instance(const Instance& inst) {
  Violations out = inst.space.validate();
  const SpaceKind kind = inst.space.kind();
  for (std::size_t i = 0; i < inst.requests.size(); ++i) {
    const Request& r = inst.requests[i];
    const std::string tag = "request " + std::to_string(r.id);
    if (r.id != static_cast<int>(i) + 1) {
      out.push_back(tag + ": ids must be contiguous from 1 (found at index " + std::to_string(i) +
                    ")");
    }
    if (!(r.release >= 0.0) || !std::isfinite(r.release)) {
      out.push_back(tag + ": release must be >= 0");
    }
    if (!inst.space.contains(r.point)) {
      out.push_back(tag + ": point outside space");
    } else if (kind == SpaceKind::General && r.point.mid_edge()) {
      out.push_back(tag + ": general requests must sit on nodes");
    }
    if (i > 0 && (kind == SpaceKind::Ring || kind == SpaceKind::SemiLine)) {
      const Request& prev = inst.requests[i - 1];
      if (r.point.x < prev.point.x) {
        out.push_back("requests " + std::to_string(prev.id) + " and " + std::to_string(r.id) +
                      " not sorted by position");
      }
    }
  }
  return out;
}

void canonicalize(Instance& inst) {
  const SpaceKind kind = inst.space.kind();
  if (kind == SpaceKind::Ring || kind == SpaceKind::SemiLine) {
    std::stable_sort(inst.requests.begin(), inst.requests.end(),
                     [](const Request& a, const Request& b) {
                       if (a.point.x != b.point.x) return a.point.x < b.point.x;
                       return a.release < b.release;
                     });
  }
  for (std::size_t i = 0; i < inst.requests.size(); ++i) {
    inst.requests[i].id = static_cast<int>(i) + 1;
  }
}

namespace {

Matrix unit_square_matrix(std::mt19937_64& rng, int nodes, bool symmetric) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(nodes));
  for (auto& p : pts) {
    p.first = unit(rng);
    p.second = unit(rng);
  }
  Matrix m(static_cast<std::size_t>(nodes), std::vector<double>(static_cast<std::size_t>(nodes)));
  for (int a = 0; a < nodes; ++a) {
    for (int b = 0; b < nodes; ++b) {
      if (a == b) continue;
      const auto& pa = pts[static_cast<std::size_t>(a)];
      const auto& pb = pts[static_cast<std::size_t>(b)];
      double d = std::hypot(pa.first - pb.first, pa.second - pb.second);
      if (!symmetric) d += std::max(0.0, pb.second - pa.second);
      m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = d;
    }
  }
  if (symmetric) {
    for (int a = 0; a < nodes; ++a) {
      for (int b = a + 1; b < nodes; ++b) {
        m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
            m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    }
  }
  return m;
}

}  // namespace

Instance generate_random(const GenParams& params, SpaceKind kind) {
  if (params.n < 0) throw std::invalid_argument("n must be >= 0");
  if (!(params.release_horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  if (!(params.extent > 0.0)) throw std::invalid_argument("extent must be > 0");

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Instance inst;
  inst.variant = params.variant;
  inst.knowledge = params.knowledge;
  const int n = params.n;
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));

  switch (kind) {
    case SpaceKind::SemiLine:
      inst.space = MetricSpace::semi_line();
      for (int i = 0; i < n; ++i) points.push_back(Point::on_line(params.extent * unit(rng)));
      break;
    case SpaceKind::Line:
      inst.space = MetricSpace::line();
      for (int i = 0; i < n; ++i) {
        points.push_back(Point::on_line(params.extent * (2.0 * unit(rng) - 1.0)));
      }
      break;
    case SpaceKind::Ring:
      inst.space = MetricSpace::ring(params.circumference);
      for (int i = 0; i < n; ++i) {
        points.push_back(inst.space.normalize(Point::on_ring(params.circumference * unit(rng))));
      }
      break;
    case SpaceKind::Star: {
      inst.space = MetricSpace::star(params.ray_count);
      std::uniform_int_distribution<int> ray(0, params.ray_count - 1);
      for (int i = 0; i < n; ++i) {
        const int r = ray(rng);
        points.push_back(Point::on_star(r, params.extent * unit(rng)));
      }
      break;
    }
    case SpaceKind::General:
      inst.space = MetricSpace::general(unit_square_matrix(rng, n + 1, params.symmetric),
                                        params.symmetric);
      for (int i = 0; i < n; ++i) points.push_back(Point::at_node(i + 1));
      break;
  }

  for (int i = 0; i < n; ++i) {
    Request r;
    r.id = i + 1;
    r.point = points[static_cast<std::size_t>(i)];
    r.release = params.release_horizon * unit(rng);
    inst.requests.push_back(r);
  }
  canonicalize(inst);
  return inst;
}

}  // namespace oltsp
