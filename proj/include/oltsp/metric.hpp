#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oltsp/common.hpp"

namespace oltsp {

enum class SpaceKind { SemiLine, Line, Ring, Star, General };

const char* to_string(SpaceKind k);
SpaceKind space_kind_from_string(const std::string& s);

// A location in one of the supported spaces. Which fields are meaningful
// depends on the space kind:
//   SemiLine/Line  x = signed coordinate
//   Ring           x = clockwise arc position in [0, C)
//   Star           ray, x = depth (depth 0 is the origin for every ray)
//   General        node, or a mid-edge offset: node -> to, x = traveled
struct Point {
  double x = 0.0;
  int ray = 0;
  int node = 0;
  int to = -1;

  static Point on_line(double x) { return Point{x, 0, 0, -1}; }
  static Point on_ring(double x) { return Point{x, 0, 0, -1}; }
  static Point on_star(int ray, double depth) { return Point{depth, ray, 0, -1}; }
  static Point at_node(int id) { return Point{0.0, 0, id, -1}; }
  static Point on_edge(int from, int to, double traveled) {
    return Point{traveled, 0, from, to};
  }

  bool mid_edge() const { return to >= 0; }

  // Field-exact comparison (used for structural equality of instances).
  friend bool operator==(const Point&, const Point&) = default;
};

// Travel direction hint. Only rings have a choice of route; every other
// space ignores the hint and uses its unique shortest path.
enum class Direction { Shortest, Clockwise, CounterClockwise };

using Matrix = std::vector<std::vector<double>>;

// Immutable metric space with a distinguished origin.
class MetricSpace {
 public:
  // Defaults to the semi-line.
  MetricSpace() = default;

  static MetricSpace semi_line();
  static MetricSpace line();
  static MetricSpace ring(double circumference);
  static MetricSpace star(int ray_count);
  // Node 0 is the origin; requests refer to nodes 1..m-1.
  static MetricSpace general(Matrix matrix, bool symmetric = true);

  SpaceKind kind() const { return kind_; }
  double circumference() const { return circumference_; }
  int ray_count() const { return ray_count_; }
  const Matrix& matrix() const { return matrix_; }
  bool symmetric() const { return symmetric_; }
  int node_count() const { return static_cast<int>(matrix_.size()); }

  Point origin() const;

  // Throws std::invalid_argument when p lies outside the space domain.
  void check_point(const Point& p) const;
  bool contains(const Point& p) const;

  // Canonical form: ring positions wrapped into [0, C), star depth-0 points
  // moved to ray 0, edge offsets at an endpoint collapsed onto the node.
  Point normalize(const Point& p) const;

  double distance(const Point& a, const Point& b) const;
  double distance_from_origin(const Point& p) const { return distance(origin(), p); }
  bool same_point(const Point& a, const Point& b, double tol = kEps) const;

  // Length of the route from a to b. For rings an explicit direction may
  // select the long arc; Shortest takes the clockwise arc on a tie.
  double path_length(const Point& a, const Point& b, Direction dir = Direction::Shortest) const;

  // Position after moving `elapsed` along the route from a to b.
  Point along(const Point& a, const Point& b, Direction dir, double elapsed) const;

  // Shortest-path travel; throws std::invalid_argument when elapsed is
  // negative or exceeds distance(a, b).
  Point travel(const Point& a, const Point& b, double elapsed) const;

  // Offset along the route a -> b at which point c is first met, if c lies on
  // the route.
  std::optional<double> offset_on_path(const Point& a, const Point& b, Direction dir,
                                       const Point& c) const;

  // Resolve Shortest into an explicit ring direction (no-op off rings).
  Direction resolve(const Point& a, const Point& b, Direction dir) const;

  // Every violated type invariant; never throws.
  Violations validate() const;

  friend bool operator==(const MetricSpace&, const MetricSpace&) = default;

 private:
  double ring_arc(double from, double to, Direction dir) const;
  double general_distance(const Point& a, const Point& b) const;
  Point general_along(const Point& a, const Point& b, double elapsed) const;
  std::optional<double> general_offset(const Point& a, const Point& b, const Point& c) const;

  SpaceKind kind_ = SpaceKind::SemiLine;
  double circumference_ = 0.0;
  int ray_count_ = 0;
  Matrix matrix_;
  bool symmetric_ = true;
};

}  // namespace oltsp
