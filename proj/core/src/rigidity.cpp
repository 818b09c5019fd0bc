#include "bse2/rigidity.hpp"

#include <cmath>
#include <string>

#include "bse2/error.hpp"

namespace bse2 {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Vec2 point(const Vector& positions, std::size_t v) { return positions.segment<2>(2 * idx(v)); }

void require_positions(const DirectedGraph& g, const Vector& positions) {
  if (positions.size() != 2 * idx(g.vertex_count())) {
    throw InvalidArgument("positions must have length 2n = " + std::to_string(2 * g.vertex_count()));
  }
}

}  // namespace

Eigen::DiagonalMatrix<double, Eigen::Dynamic> edge_length_squared_matrix(const Se2Framework& f) {
  Vector d(idx(f.edge_count()));
  for (std::size_t k = 0; k < f.edge_count(); ++k) {
    const Edge& e = f.graph().edge(k);
    d(idx(k)) = (f.position(e.tail) - f.position(e.head)).squaredNorm();
  }
  return Eigen::DiagonalMatrix<double, Eigen::Dynamic>(d);
}

Matrix parallel_rigidity_matrix(const DirectedGraph& g, const Vector& positions) {
  require_positions(g, positions);
  Matrix r = Matrix::Zero(idx(g.edge_count()), 2 * idx(g.vertex_count()));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const Vec2 row = perp(point(positions, e.head) - point(positions, e.tail));
    r.block<1, 2>(idx(k), 2 * idx(e.head)) = row.transpose();
    r.block<1, 2>(idx(k), 2 * idx(e.tail)) = -row.transpose();
  }
  return r;
}

Matrix parallel_rigidity_matrix(const Se2Framework& f) {
  return parallel_rigidity_matrix(f.graph(), f.positions());
}

Matrix attitude_coupling_matrix(const Se2Framework& f) {
  return edge_length_squared_matrix(f) * f.graph().out_incidence_matrix().transpose();
}

Matrix bearing_position_jacobian(const DirectedGraph& g, const Vector& positions, double min_length) {
  require_positions(g, positions);
  Matrix j = Matrix::Zero(idx(g.edge_count()), 2 * idx(g.vertex_count()));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const Vec2 d = point(positions, e.tail) - point(positions, e.head);
    const double l2 = d.squaredNorm();
    if (l2 == 0.0 || std::sqrt(l2) < min_length) {
      throw DegenerateEdgeError(k, e.head, e.tail,
                                "edge " + std::to_string(k) + " (" + std::to_string(e.head) + " -> " +
                                    std::to_string(e.tail) + ") has length below " +
                                    std::to_string(min_length));
    }
    const Vec2 grad = perp(d) / l2;
    j.block<1, 2>(idx(k), 2 * idx(e.tail)) = grad.transpose();
    j.block<1, 2>(idx(k), 2 * idx(e.head)) = -grad.transpose();
  }
  return j;
}

Matrix bearing_rigidity_matrix(const Se2Framework& f) {
  const auto n = idx(f.vertex_count());
  Matrix b(idx(f.edge_count()), 3 * n);
  b.leftCols(2 * n) = bearing_position_jacobian(f.graph(), f.positions());
  b.rightCols(n) = -f.graph().out_incidence_matrix().transpose();
  return b;
}

Vector coordinated_rotation_vector(const Se2Framework& f) {
  const auto n = idx(f.vertex_count());
  Vector z(3 * n);
  for (std::size_t v = 0; v < f.vertex_count(); ++v) z.segment<2>(2 * idx(v)) = perp(f.position(v));
  z.tail(n).setOnes();
  return z;
}

int coordinated_rotation_subspace_dim(const Se2Framework& f, double tol) {
  return intersection_dimension(parallel_rigidity_matrix(f), attitude_coupling_matrix(f), tol);
}

Matrix trivial_motion_basis(const Se2Framework& f) {
  const auto n = idx(f.vertex_count());
  const Vec2 first = f.position(0);
  bool spread = false;
  for (std::size_t v = 1; v < f.vertex_count() && !spread; ++v) spread = f.position(v) != first;
  if (!spread) {
    throw InvalidArgument("trivial motion basis needs at least two distinct vertex positions");
  }
  Matrix t = Matrix::Zero(3 * n, 4);
  for (Eigen::Index v = 0; v < n; ++v) {
    t(2 * v, 0) = 1.0;
    t(2 * v + 1, 1) = 1.0;
  }
  t.col(2).head(2 * n) = f.positions();
  t.col(3) = coordinated_rotation_vector(f);
  return t;
}

RigidityReport analyze(const Se2Framework& f, double tol) {
  const std::size_t n = f.vertex_count();
  RigidityReport rep;
  rep.n_vertices = n;
  rep.n_edges = f.edge_count();
  rep.tolerance_used = tol;
  rep.required_rank = 3 * static_cast<int>(n) - 4;

  const Matrix b = bearing_rigidity_matrix(f);
  rep.bearing_rank = rank_with_tolerance(b, tol);
  rep.bearing_nullity = 3 * static_cast<int>(n) - rep.bearing_rank;
  rep.nullspace_basis = nullspace_basis(b, tol);

  const Matrix r_par = parallel_rigidity_matrix(f);
  const Matrix r_psi = attitude_coupling_matrix(f);
  rep.parallel_rank = rank_with_tolerance(r_par, tol);
  rep.attitude_rank = rank_with_tolerance(r_psi, tol);
  rep.coord_rot_dim = intersection_dimension(r_par, r_psi, tol);

  rep.min_out_degree = f.graph().min_out_degree();
  rep.out_degree_ok = rep.min_out_degree >= 1;

  rep.rigid_by_theorem = rep.bearing_rank == rep.required_rank;
  // rk B = rk R_par + rk R_psi - dim R_rot, so the corollary's two conditions
  // also need R_psi at full column rank (every agent measures something).
  rep.rigid_by_corollary = rep.parallel_rank == 2 * static_cast<int>(n) - 3 && rep.coord_rot_dim == 1 &&
                           rep.attitude_rank == static_cast<int>(n);
  return rep;
}

}  // namespace bse2
