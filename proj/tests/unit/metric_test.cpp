#include <gtest/gtest.h>

#include <random>

#include "oltsp/metric.hpp"

using namespace oltsp;

namespace {

MetricSpace example1_space() {
  return MetricSpace::general({{0, 3, 2, 3}, {3, 0, 3, 1}, {2, 3, 0, 3}, {3, 1, 3, 0}});
}

}  // namespace

TEST(Distance, RingWrapsAround) {
  const MetricSpace ring = MetricSpace::ring(1.0);
  EXPECT_NEAR(ring.distance(Point::on_ring(0.1), Point::on_ring(0.9)), 0.2, kEps);
}

TEST(Distance, StarGoesThroughOrigin) {
  const MetricSpace star = MetricSpace::star(3);
  EXPECT_NEAR(star.distance(Point::on_star(1, 0.5), Point::on_star(2, 0.3)), 0.8, kEps);
  EXPECT_NEAR(star.distance(Point::on_star(1, 0.5), Point::on_star(1, 0.3)), 0.2, kEps);
}

TEST(Distance, GeneralMatrixLookup) {
  const MetricSpace g = example1_space();
  EXPECT_EQ(g.distance(Point::at_node(1), Point::at_node(3)), 1.0);
  EXPECT_EQ(g.distance(Point::at_node(0), Point::at_node(2)), 2.0);
}

TEST(Distance, RejectsPointsOutsideDomain) {
  EXPECT_THROW(MetricSpace::semi_line().distance(Point::on_line(-1), Point::on_line(0)),
               std::invalid_argument);
  EXPECT_THROW(MetricSpace::star(2).distance(Point::on_star(5, 1), Point::on_star(0, 0)),
               std::invalid_argument);
  EXPECT_THROW(example1_space().distance(Point::at_node(9), Point::at_node(0)),
               std::invalid_argument);
}

TEST(Travel, SemiLine) {
  const Point p = MetricSpace::semi_line().travel(Point::on_line(0), Point::on_line(1), 0.5);
  EXPECT_NEAR(p.x, 0.5, kEps);
}

TEST(Travel, RingTakesShorterArc) {
  const Point p = MetricSpace::ring(1.0).travel(Point::on_ring(0), Point::on_ring(0.9), 0.05);
  EXPECT_NEAR(p.x, 0.95, kEps);
}

TEST(Travel, RingAntipodalGoesClockwise) {
  const Point p = MetricSpace::ring(1.0).travel(Point::on_ring(0.2), Point::on_ring(0.7), 0.1);
  EXPECT_NEAR(p.x, 0.3, kEps);
}

TEST(Travel, StarPassesOrigin) {
  const MetricSpace star = MetricSpace::star(3);
  const Point p = star.travel(Point::on_star(1, 0.5), Point::on_star(2, 0.3), 0.6);
  EXPECT_EQ(p.ray, 2);
  EXPECT_NEAR(p.x, 0.1, kEps);
}

TEST(Travel, GeneralMovesAlongDirectEdge) {
  const MetricSpace g = example1_space();
  const Point p = g.travel(Point::at_node(1), Point::at_node(2), 1.0);
  EXPECT_TRUE(p.mid_edge());
  EXPECT_NEAR(g.distance(p, Point::at_node(2)), 2.0, kEps);
  EXPECT_NEAR(g.distance(Point::at_node(1), p), 1.0, kEps);
}

TEST(Travel, EndpointsAndErrors) {
  const MetricSpace line = MetricSpace::line();
  EXPECT_EQ(line.travel(Point::on_line(-1), Point::on_line(2), 0).x, -1.0);
  EXPECT_NEAR(line.travel(Point::on_line(-1), Point::on_line(2), 3).x, 2.0, kEps);
  EXPECT_THROW(line.travel(Point::on_line(0), Point::on_line(1), -0.1), std::invalid_argument);
  EXPECT_THROW(line.travel(Point::on_line(0), Point::on_line(1), 1.5), std::invalid_argument);
}

TEST(Validate, TriangleViolationNamesIndices) {
  const MetricSpace bad = MetricSpace::general({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
  const Violations v = bad.validate();
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("0"), std::string::npos);
  EXPECT_NE(v.front().find("2"), std::string::npos);
}

TEST(Validate, RingAndAsymmetricAreFine) {
  EXPECT_TRUE(MetricSpace::ring(1.0).validate().empty());
  EXPECT_TRUE(MetricSpace::general({{0, 2}, {3, 0}}, false).validate().empty());
  EXPECT_FALSE(MetricSpace::general({{0, 2}, {3, 0}}, true).validate().empty());
}

TEST(Validate, NonzeroDiagonal) {
  EXPECT_FALSE(MetricSpace::general({{0, 1}, {1, 0.5}}).validate().empty());
}

TEST(Properties, PathConsistencyAndBounds) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<MetricSpace> spaces{MetricSpace::semi_line(), MetricSpace::line(),
                                        MetricSpace::ring(1.0), MetricSpace::star(4)};
  for (const MetricSpace& s : spaces) {
    for (int i = 0; i < 500; ++i) {
      auto pick = [&] {
        switch (s.kind()) {
          case SpaceKind::Line: return Point::on_line(2 * u(rng) - 1);
          case SpaceKind::Star: return s.normalize(Point::on_star(static_cast<int>(rng() % 4), u(rng)));
          default: return Point::on_line(u(rng) * 0.999);
        }
      };
      const Point a = pick(), b = pick();
      const double d = s.distance(a, b);
      EXPECT_EQ(d, s.distance(b, a));
      double e1 = u(rng) * d, e2 = u(rng) * d;
      if (e1 > e2) std::swap(e1, e2);
      EXPECT_NEAR(s.distance(s.travel(a, b, e1), s.travel(a, b, e2)), e2 - e1, 1e-9);
      if (s.kind() == SpaceKind::Ring) EXPECT_LE(d, 0.5 + kEps);
    }
  }
}

TEST(Properties, StarDepthZeroIsOrigin) {
  const MetricSpace star = MetricSpace::star(3);
  EXPECT_TRUE(star.same_point(Point::on_star(2, 0), star.origin()));
  EXPECT_EQ(star.normalize(Point::on_star(2, 0)), star.origin());
}

TEST(Ring, ExplicitDirectionTakesLongArc) {
  const MetricSpace ring = MetricSpace::ring(1.0);
  EXPECT_NEAR(ring.path_length(Point::on_ring(0.1), Point::on_ring(0.2), Direction::CounterClockwise),
              0.9, kEps);
  const Point p = ring.along(Point::on_ring(0.1), Point::on_ring(0.2), Direction::CounterClockwise, 0.3);
  EXPECT_NEAR(p.x, 0.8, kEps);
}
