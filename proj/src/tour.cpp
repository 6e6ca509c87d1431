#include "oltsp/algorithms.hpp"

namespace oltsp {

TourStats tour_stats(const MetricSpace& space, Variant variant,
                     const std::vector<Point>& locations, const std::vector<int>& order) {
  TourStats s;
  s.order = order;
  Point at = space.origin();
  double len = 0.0;
  for (int id : order) {
    const Point& p = locations.at(static_cast<std::size_t>(id - 1));
    len += space.distance(at, p);
    s.prefix.push_back(len);
    at = p;
  }
  if (variant == Variant::Closed) len += space.distance(at, space.origin());
  s.length = len;
  return s;
}

double alpha(const TourStats& stats, const std::vector<bool>& released) {
  if (stats.length <= 0.0) return 1.0;
  for (std::size_t i = 0; i < stats.order.size(); ++i) {
    if (!released.at(static_cast<std::size_t>(stats.order[i] - 1))) {
      return stats.prefix[i] / stats.length;
    }
  }
  return 1.0;
}

}  // namespace oltsp
