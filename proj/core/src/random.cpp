#include "bse2/random.hpp"

#include <numbers>
#include <vector>

#include "bse2/error.hpp"

namespace bse2 {

Se2Framework random_framework(std::mt19937_64& rng, std::size_t n, const RandomFrameworkOptions& options) {
  if (n < 2) throw InvalidArgument("random framework needs at least two vertices");
  if (options.sink_vertex && *options.sink_vertex >= n) throw InvalidArgument("sink vertex out of range");

  std::uniform_real_distribution<double> coord(-options.extent, options.extent);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Vector positions(2 * static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) {
    Vec2 p;
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      p = {coord(rng), coord(rng)};
      ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) {
        ok = (p - Vec2(positions.segment<2>(2 * static_cast<Eigen::Index>(u)))).norm() >= options.min_separation;
      }
    }
    if (!ok) throw InvalidArgument("cannot place points with the requested separation");
    positions.segment<2>(2 * static_cast<Eigen::Index>(v)) = p;
  }
  Vector attitudes(static_cast<Eigen::Index>(n));
  for (Eigen::Index v = 0; v < attitudes.size(); ++v) attitudes(v) = angle(rng);

  const auto is_sink = [&](std::size_t v) { return options.sink_vertex && *options.sink_vertex == v; };
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t h = 0; h < n; ++h) {
    if (is_sink(h)) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (t != h && unit(rng) < options.edge_probability) adj[h][t] = true;
    }
    if (options.require_out_degree) {
      bool any = false;
      for (std::size_t t = 0; t < n; ++t) any = any || adj[h][t];
      if (!any) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 2);
        std::size_t t = pick(rng);
        if (t >= h) ++t;
        adj[h][t] = true;
      }
    }
  }
  std::vector<Edge> edges;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t t = 0; t < n; ++t)
      if (adj[h][t]) edges.push_back({h, t});
  return Se2Framework(DirectedGraph(n, std::move(edges)), std::move(positions), std::move(attitudes));
}

}  // namespace bse2
