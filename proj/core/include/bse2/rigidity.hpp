#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "bse2/framework.hpp"
#include "bse2/graph.hpp"
#include "bse2/linalg.hpp"

namespace bse2 {

// Column order for every 3n-wide matrix and vector in this header:
// [x1, y1, ..., xn, yn, psi1, ..., psin].

/// |E| x |E| diagonal of squared edge lengths.
Eigen::DiagonalMatrix<double, Eigen::Dynamic> edge_length_squared_matrix(const Se2Framework& f);

/// |E| x 2n parallel rigidity matrix, one row per directed edge (i, j):
/// ((p_i - p_j)^perp)^T at i and its negative at j.
Matrix parallel_rigidity_matrix(const Se2Framework& f);
Matrix parallel_rigidity_matrix(const DirectedGraph& g, const Vector& positions);

/// |E| x n attitude coupling D_G * Ebar^T, whose image meets that of the
/// parallel rigidity matrix in the coordinated rotation subspace.
Matrix attitude_coupling_matrix(const Se2Framework& f);

/// Position block of the bearing Jacobian, D_G^{-1} R_par, for arbitrary
/// planar points. Throws DegenerateEdgeError when an edge has length below
/// `min_length`.
Matrix bearing_position_jacobian(const DirectedGraph& g, const Vector& positions, double min_length = 0.0);

/// |E| x 3n directed bearing rigidity matrix, the Jacobian of
/// bearing_rigidity_function: [D_G^{-1} R_par | -Ebar^T].
Matrix bearing_rigidity_matrix(const Se2Framework& f);

/// Counterclockwise coordinated rotation: every position turns about the
/// origin at unit rate, (x, y) -> (-y, x), and every attitude turns at unit
/// rate. Lies in the nullspace of the bearing rigidity matrix.
Vector coordinated_rotation_vector(const Se2Framework& f);

/// dim(IM R_par ∩ IM R_psi) from ranks; always >= 1 for a non-empty edge set.
int coordinated_rotation_subspace_dim(const Se2Framework& f, double tol = kDefaultRankTolerance);

/// 3n x 4: x-translation, y-translation, dilation, coordinated rotation.
/// Throws InvalidArgument if every vertex sits at the same point.
Matrix trivial_motion_basis(const Se2Framework& f);

struct RigidityReport {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  int bearing_rank = 0;
  int bearing_nullity = 0;
  int required_rank = 0;  // 3n - 4
  Matrix nullspace_basis;  // 3n x bearing_nullity, orthonormal columns
  int parallel_rank = 0;
  int attitude_rank = 0;
  int coord_rot_dim = 0;
  std::size_t min_out_degree = 0;
  bool out_degree_ok = false;
  bool rigid_by_theorem = false;
  bool rigid_by_corollary = false;
  double tolerance_used = kDefaultRankTolerance;
};

/// Infinitesimal rigidity at the given configuration. The rank test on the
/// bearing rigidity matrix and the parallel-rank / coordinated-rotation test
/// are evaluated separately; both certify rigidity only at this configuration,
/// so collinear or otherwise non-generic placements may report non-rigid.
RigidityReport analyze(const Se2Framework& f, double tol = kDefaultRankTolerance);

}  // namespace bse2
