#pragma once

#include "oltsp/instance.hpp"

namespace fixtures {

// Three requests on the four-node figure graph: d(O,q1)=3, d(O,q2)=2,
// d(O,q3)=3, d(q1,q2)=3, d(q1,q3)=1, d(q2,q3)=3. Releases 2, 6, 8.
inline oltsp::Instance example1(oltsp::Variant v = oltsp::Variant::Closed) {
  using namespace oltsp;
  Instance inst;
  inst.space = MetricSpace::general({{0, 3, 2, 3}, {3, 0, 3, 1}, {2, 3, 0, 3}, {3, 1, 3, 0}});
  inst.variant = v;
  inst.requests = {{1, Point::at_node(1), 2.0}, {2, Point::at_node(2), 6.0},
                   {3, Point::at_node(3), 8.0}};
  return inst;
}

inline oltsp::Instance on_line(oltsp::MetricSpace space, oltsp::Variant v,
                               std::vector<std::pair<double, double>> pos_release) {
  using namespace oltsp;
  Instance inst;
  inst.space = std::move(space);
  inst.variant = v;
  int id = 1;
  for (auto [x, r] : pos_release) inst.requests.push_back({id++, Point::on_line(x), r});
  return inst;
}

}  // namespace fixtures
