#include "bse2/graph.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "bse2/error.hpp"

namespace bse2 {

namespace {

std::string describe(std::size_t k, const Edge& e) {
  return "edge " + std::to_string(k) + " (" + std::to_string(e.head) + " -> " +
         std::to_string(e.tail) + ")";
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ < 1) {
    throw GraphError(GraphError::Kind::TooFewVertices, "graph needs at least one vertex");
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.head >= n_vertices_ || e.tail >= n_vertices_) {
      throw GraphError(GraphError::Kind::IndexOutOfRange,
                       describe(k, e) + ": vertex index out of range for " +
                           std::to_string(n_vertices_) + " vertices");
    }
    if (e.head == e.tail) {
      throw GraphError(GraphError::Kind::SelfLoop, describe(k, e) + ": self-loop");
    }
    if (!seen.emplace(e.head, e.tail).second) {
      throw GraphError(GraphError::Kind::DuplicateEdge, describe(k, e) + ": duplicate directed edge");
    }
  }
}

DirectedGraph DirectedGraph::complete(std::size_t n) {
  if (n < 2) {
    throw GraphError(GraphError::Kind::TooFewVertices, "complete graph needs at least two vertices");
  }
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1));
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t t = 0; t < n; ++t)
      if (h != t) edges.push_back({h, t});
  return DirectedGraph(n, std::move(edges));
}

std::size_t DirectedGraph::out_degree(std::size_t v) const {
  if (v >= n_vertices_) {
    throw GraphError(GraphError::Kind::IndexOutOfRange,
                     "vertex " + std::to_string(v) + " out of range");
  }
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.head == v; }));
}

std::size_t DirectedGraph::in_degree(std::size_t v) const {
  if (v >= n_vertices_) {
    throw GraphError(GraphError::Kind::IndexOutOfRange,
                     "vertex " + std::to_string(v) + " out of range");
  }
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.tail == v; }));
}

std::size_t DirectedGraph::min_out_degree() const noexcept {
  std::vector<std::size_t> deg(n_vertices_, 0);
  for (const Edge& e : edges_) ++deg[e.head];
  return *std::min_element(deg.begin(), deg.end());
}

bool DirectedGraph::contains(Edge e) const noexcept {
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

DirectedGraph DirectedGraph::with_edge(Edge e) const {
  auto edges = edges_;
  edges.push_back(e);
  return DirectedGraph(n_vertices_, std::move(edges));
}

Eigen::MatrixXd DirectedGraph::incidence_matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_vertices_),
                                            static_cast<Eigen::Index>(edges_.size()));
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    m(static_cast<Eigen::Index>(edges_[k].head), col) = 1.0;
    m(static_cast<Eigen::Index>(edges_[k].tail), col) = -1.0;
  }
  return m;
}

Eigen::MatrixXd DirectedGraph::out_incidence_matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_vertices_),
                                            static_cast<Eigen::Index>(edges_.size()));
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    m(static_cast<Eigen::Index>(edges_[k].head), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return m;
}

}  // namespace bse2
