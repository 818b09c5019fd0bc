#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace bse2 {

/// Directed edge (head, tail): the head agent measures the bearing to the tail.
struct Edge {
  std::size_t head = 0;
  std::size_t tail = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A validated directed sensing graph. Edge order is significant: edge k
/// labels row k of every matrix assembled from the graph.
///
/// Invariants: at least one vertex, no self-loops, indices in range, no
/// repeated ordered pair. (u,v) and (v,u) are distinct edges.
class DirectedGraph {
 public:
  /// Throws GraphError on any violated invariant.
  DirectedGraph(std::size_t n_vertices, std::vector<Edge> edges);

  /// Every ordered pair, lexicographic by (head, tail). Requires n >= 2.
  static DirectedGraph complete(std::size_t n);

  std::size_t vertex_count() const noexcept { return n_vertices_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_.at(k); }

  std::size_t out_degree(std::size_t v) const;
  std::size_t in_degree(std::size_t v) const;
  std::size_t min_out_degree() const noexcept;

  bool contains(Edge e) const noexcept;

  /// Copy with `e` appended as the last edge label.
  DirectedGraph with_edge(Edge e) const;

  /// n x |E|, entry +1 at the head, -1 at the tail of each edge.
  Eigen::MatrixXd incidence_matrix() const;

  /// n x |E| out-incidence matrix: entry 1 iff vertex i is the head of edge k.
  Eigen::MatrixXd out_incidence_matrix() const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  std::size_t n_vertices_;
  std::vector<Edge> edges_;
};

}  // namespace bse2
