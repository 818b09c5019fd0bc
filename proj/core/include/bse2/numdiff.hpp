#pragma once

#include <utility>

#include <Eigen/Core>

namespace bse2 {

/// Central-difference Jacobian of `f` at `x`: column j is
/// (f(x + h e_j) - f(x - h e_j)) / 2h. `f` maps Eigen::VectorXd to
/// Eigen::VectorXd; use `wrap` to post-process each column difference
/// (for angle-valued outputs).
template <typename Fn, typename Wrap>
Eigen::MatrixXd central_difference_jacobian(Fn&& f, const Eigen::VectorXd& x, double h, Wrap&& wrap) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp(j) = x(j) + h;
    const Eigen::VectorXd fp = f(xp);
    xp(j) = x(j) - h;
    const Eigen::VectorXd fm = f(xp);
    xp(j) = x(j);
    Eigen::VectorXd diff = fp - fm;
    for (Eigen::Index i = 0; i < diff.size(); ++i) diff(i) = wrap(diff(i));
    jac.col(j) = diff / (2.0 * h);
  }
  return jac;
}

template <typename Fn>
Eigen::MatrixXd central_difference_jacobian(Fn&& f, const Eigen::VectorXd& x, double h) {
  return central_difference_jacobian(std::forward<Fn>(f), x, h, [](double v) { return v; });
}

/// Central-difference gradient of a scalar function.
template <typename Fn>
Eigen::VectorXd central_difference_gradient(Fn&& f, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp(j) = x(j) + h;
    const double fp = f(xp);
    xp(j) = x(j) - h;
    const double fm = f(xp);
    xp(j) = x(j);
    g(j) = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace bse2
