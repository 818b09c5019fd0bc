#pragma once

#include <vector>

#include "bse2/framework.hpp"
#include "oracles.hpp"

namespace testing_support {

inline std::vector<oracle::EdgeIdx> edges_of(const bse2::DirectedGraph& g) {
  std::vector<oracle::EdgeIdx> out;
  for (const bse2::Edge& e : g.edges()) out.push_back({e.head, e.tail});
  return out;
}

inline Eigen::VectorXd stacked(const bse2::Se2Framework& f) {
  Eigen::VectorXd chi(f.positions().size() + f.attitudes().size());
  chi << f.positions(), f.attitudes();
  return chi;
}

inline bse2::Vector vec(std::initializer_list<double> v) {
  bse2::Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

/// Triangle with a sink: agents 0 and 1 measure each other and agent 2;
/// agent 2 measures nothing.
inline bse2::Se2Framework sink_triangle() {
  return bse2::Se2Framework(bse2::DirectedGraph(3, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}), vec({0.0, 0.0, 2.0, 0.0, 0.8, 1.5}),
                            vec({0.3, -1.1, 2.0}));
}

}  // namespace testing_support
