#pragma once

#include <Eigen/Core>

namespace bse2 {

/// Default relative singular-value threshold for rank decisions.
inline constexpr double kDefaultRankTolerance = 1e-8;

/// Number of singular values strictly above tol * sigma_max. A zero (or empty)
/// matrix has rank 0. Throws NumericalError on non-finite entries.
int rank_with_tolerance(const Eigen::MatrixXd& m, double tol = kDefaultRankTolerance);

/// Orthonormal basis of the numerical right nullspace, one vector per column:
/// the right singular vectors whose singular value is <= tol * sigma_max,
/// plus all directions beyond min(rows, cols).
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, double tol = kDefaultRankTolerance);

/// Orthonormal basis for the column span of `m` (relative tolerance as above).
Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& m, double tol = kDefaultRankTolerance);

/// Principal angles (radians, ascending) between the column spans of `a` and
/// `b`. Columns need not be orthonormal; each input is orthonormalized first.
Eigen::VectorXd principal_angles(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                 double tol = kDefaultRankTolerance);

/// dim(span A ∩ span B) = rk A + rk B - rk [A B].
int intersection_dimension(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           double tol = kDefaultRankTolerance);

}  // namespace bse2
