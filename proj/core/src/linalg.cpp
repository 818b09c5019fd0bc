#include "bse2/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/SVD>

#include "bse2/error.hpp"

namespace bse2 {

namespace {

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw NumericalError("matrix has non-finite entries");
}

Eigen::Index count_above(const Eigen::VectorXd& sigma, double tol) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double threshold = tol * sigma(0);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > threshold) ++r;
  return r;
}

}  // namespace

int rank_with_tolerance(const Eigen::MatrixXd& m, double tol) {
  require_finite(m);
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return static_cast<int>(count_above(svd.singularValues(), tol));
}

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, double tol) {
  require_finite(m);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = count_above(svd.singularValues(), tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& m, double tol) {
  require_finite(m);
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const Eigen::Index r = count_above(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

Eigen::VectorXd principal_angles(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (a.rows() != b.rows()) throw InvalidArgument("principal angles need equal ambient dimension");
  Eigen::MatrixXd qa = column_space_basis(a, tol);
  Eigen::MatrixXd qb = column_space_basis(b, tol);
  if (qb.cols() > qa.cols()) std::swap(qa, qb);
  const Eigen::Index k = qb.cols();
  Eigen::VectorXd angles(k);
  if (k == 0) return angles;

  // Cosines are accurate for large angles, sines for small ones.
  Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(qa.transpose() * qb);
  Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(qb - qa * (qa.transpose() * qb));
  const Eigen::VectorXd& cosines = cos_svd.singularValues();  // descending
  const Eigen::VectorXd& sines = sin_svd.singularValues();    // descending
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    const double s = std::clamp(sines(k - 1 - i), 0.0, 1.0);
    angles(i) = c > s ? std::asin(s) : std::acos(c);
  }
  return angles;
}

int intersection_dimension(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (a.rows() != b.rows()) throw InvalidArgument("subspace intersection needs equal row counts");
  // Column spans are scale-invariant; balance the blocks so one relative
  // threshold serves all three ranks.
  const double na = a.norm();
  const double nb = b.norm();
  Eigen::MatrixXd joint(a.rows(), a.cols() + b.cols());
  joint << (na > 0.0 ? a / na : a), (nb > 0.0 ? b / nb : b);
  return rank_with_tolerance(a, tol) + rank_with_tolerance(b, tol) - rank_with_tolerance(joint, tol);
}

}  // namespace bse2
