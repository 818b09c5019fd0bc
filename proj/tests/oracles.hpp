#pragma once

// Independent reference computations for the tests. Nothing here calls the
// closed-form matrices under test; bearings come straight from atan2 of the
// world-frame difference.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace oracle {

inline double wrap(double a) {
  double r = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (r <= 0.0) r += 2.0 * std::numbers::pi;
  return r - std::numbers::pi;
}

struct EdgeIdx {
  std::size_t head;
  std::size_t tail;
};

/// Body-frame bearing from (x_v, y_v, psi_v) to (x_u, y_u).
inline double bearing(double xv, double yv, double psi_v, double xu, double yu) {
  return wrap(std::atan2(yu - yv, xu - xv) - psi_v);
}

/// Bearing function on the stacked configuration [x1,y1,...,xn,yn,psi1..psin].
inline Eigen::VectorXd bearings(const Eigen::VectorXd& chi, const std::vector<EdgeIdx>& edges) {
  const auto n = chi.size() / 3;
  Eigen::VectorXd b(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto v = static_cast<Eigen::Index>(edges[k].head);
    const auto u = static_cast<Eigen::Index>(edges[k].tail);
    b(static_cast<Eigen::Index>(k)) = bearing(chi(2 * v), chi(2 * v + 1), chi(2 * n + v), chi(2 * u), chi(2 * u + 1));
  }
  return b;
}

/// Central differences; each output difference is wrapped when `angular`.
inline Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h, bool angular) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd j(f0.size(), x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Eigen::VectorXd xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    Eigen::VectorXd d = f(xp) - f(xm);
    if (angular)
      for (Eigen::Index r = 0; r < d.size(); ++r) d(r) = wrap(d(r));
    j.col(c) = d / (2.0 * h);
  }
  return j;
}

inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Eigen::VectorXd xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    g(c) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

struct CostGains {
  double k_e, k1, k2, k3;
};

/// Estimator cost written out from its definition, on y = [xi (2n); theta (n)].
/// Estimated bearing of edge (i, j): atan2 of (xi_j - xi_i) plus theta_i.
inline double cost(const Eigen::VectorXd& y, const Eigen::VectorXd& measured, const std::vector<EdgeIdx>& edges,
                   std::size_t iota, std::size_t kappa, const CostGains& k) {
  const auto n = y.size() / 3;
  double e2 = 0.0;
  for (std::size_t q = 0; q < edges.size(); ++q) {
    const auto i = static_cast<Eigen::Index>(edges[q].head);
    const auto j = static_cast<Eigen::Index>(edges[q].tail);
    const double est = std::atan2(y(2 * j + 1) - y(2 * i + 1), y(2 * j) - y(2 * i)) + y(2 * n + i);
    const double e = wrap(measured(static_cast<Eigen::Index>(q)) - est);
    e2 += e * e;
  }
  const auto a = static_cast<Eigen::Index>(iota);
  const auto c = static_cast<Eigen::Index>(kappa);
  const double anchor = y(2 * a) * y(2 * a) + y(2 * a + 1) * y(2 * a + 1);
  const double scale = y(2 * c) * y(2 * c) + y(2 * c + 1) * y(2 * c + 1) - 1.0;
  return 0.5 * (k.k_e * e2 + k.k1 * anchor + k.k2 * scale * scale + k.k3 * (1.0 - std::cos(y(2 * n + a))));
}

}  // namespace oracle
