#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "bse2/angle.hpp"
#include "bse2/graph.hpp"

namespace bse2 {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Counterclockwise rotation by `psi`. Its transpose maps world-frame vectors
/// into the body frame of an agent with attitude `psi`.
Mat2 rotation_matrix(Angle psi) noexcept;

/// Counterclockwise quarter turn: (x, y) -> (-y, x).
inline Vec2 perp(const Vec2& v) noexcept { return {-v.y(), v.x()}; }

/// A directed graph with a point of SE(2) at every vertex.
///
/// positions are interleaved (x1, y1, ..., xn, yn); attitudes are radians,
/// stored wrapped to (-pi, pi]. Every measured pair has distinct endpoints.
class Se2Framework {
 public:
  /// Throws InvalidArgument on size mismatch or non-finite values and
  /// DegenerateEdgeError when an edge joins coincident points.
  Se2Framework(DirectedGraph graph, Vector positions, Vector attitudes);

  const DirectedGraph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  const Vector& positions() const noexcept { return positions_; }
  const Vector& attitudes() const noexcept { return attitudes_; }

  Vec2 position(std::size_t v) const { return positions_.segment<2>(2 * static_cast<Eigen::Index>(v)); }
  Angle attitude(std::size_t v) const { return Angle(attitudes_(static_cast<Eigen::Index>(v))); }

  /// Same placement, different sensing graph.
  Se2Framework with_graph(DirectedGraph graph) const;

 private:
  DirectedGraph graph_;
  Vector positions_;
  Vector attitudes_;
};

/// Unit vector from agent v towards agent u, in v's body frame, for edge k = (v, u).
Vec2 bearing_vector(const Se2Framework& f, std::size_t k);

/// Bearing angle of edge k; atan2 of bearing_vector.
Angle bearing(const Se2Framework& f, std::size_t k);

/// Stacked bearings in edge-label order, radians in (-pi, pi].
Vector bearing_rigidity_function(const Se2Framework& f);

/// Both frameworks share the graph and every edge bearing agrees within
/// `tol` (wrapped). Throws InvalidArgument if the graphs differ.
bool is_bearing_equivalent(const Se2Framework& f1, const Se2Framework& f2, double tol);

/// Bearings agree for every ordered vertex pair, measured or not. Throws
/// InvalidArgument on vertex-count mismatch and DegenerateEdgeError if any pair
/// coincides in either framework.
bool is_bearing_congruent(const Se2Framework& f1, const Se2Framework& f2, double tol);

/// Parameters of a bearing-preserving similarity: rotate by `rotation` and
/// scale by `scale` about `pivot`, then translate. Attitudes turn by `rotation`.
struct TrivialMotion {
  Vec2 translation = Vec2::Zero();
  double scale = 1.0;
  Angle rotation{};
  Vec2 pivot = Vec2::Zero();
};

/// Throws InvalidArgument if scale <= 0.
Se2Framework apply_trivial_motion(const Se2Framework& f, const TrivialMotion& motion);

/// Mean position of all vertices.
Vec2 centroid(const Se2Framework& f);

}  // namespace bse2
