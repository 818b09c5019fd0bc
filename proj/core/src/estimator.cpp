#include "bse2/estimator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "bse2/rigidity.hpp"

namespace bse2 {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string format_time(double t) {
  return std::isnan(t) ? std::string() : " at t = " + std::to_string(t);
}

void require_sizes(const EstimatorState& s, const DirectedGraph& g) {
  const auto n = idx(g.vertex_count());
  if (s.xi_hat.size() != 2 * n || s.theta_hat.size() != n) {
    throw InvalidArgument("estimator state does not match a graph with " + std::to_string(n) + " vertices");
  }
}

void require_separated(const EstimatorState& s, const DirectedGraph& g, double epsilon_floor) {
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const double len = (s.xi(e.tail) - s.xi(e.head)).norm();
    if (!(len >= epsilon_floor)) throw EstimateCollapseError(k, len);
  }
}

}  // namespace

void EstimatorConfig::validate(std::size_t n_vertices) const {
  if (iota >= n_vertices || kappa >= n_vertices) {
    throw InvalidArgument("iota and kappa must index agents (n = " + std::to_string(n_vertices) + ")");
  }
  if (iota == kappa) throw InvalidArgument("iota and kappa must differ");
  if (!(gains.k_e >= 0.0 && gains.k1 >= 0.0 && gains.k2 >= 0.0 && gains.k3 >= 0.0)) {
    throw InvalidArgument("estimator gains must be nonnegative");
  }
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(t_final >= dt)) throw InvalidArgument("t_final must be at least dt");
  if (!(epsilon_floor > 0.0)) throw InvalidArgument("epsilon_floor must be positive");
  if (sample_stride < 1) throw InvalidArgument("sample_stride must be at least 1");
}

Vector EstimatorState::stacked() const {
  Vector y(xi_hat.size() + theta_hat.size());
  y << xi_hat, theta_hat;
  return y;
}

EstimatorState EstimatorState::from_stacked(const Vector& y) {
  if (y.size() % 3 != 0) throw InvalidArgument("stacked estimator state must have length 3n");
  const Eigen::Index n = y.size() / 3;
  return EstimatorState{y.head(2 * n), y.tail(n)};
}

void TrajectoryTrace::push(const TraceSample& s) {
  times.push_back(s.time);
  states.push_back(s.state);
  bearing_errors.push_back(s.bearing_error);
  cumulative_position_error.push_back(s.position_error);
  cost.push_back(s.cost);
}

TraceSample TrajectoryTrace::sample(std::size_t i) const {
  return TraceSample{times.at(i), states.at(i), bearing_errors.at(i), cumulative_position_error.at(i), cost.at(i)};
}

EstimateCollapseError::EstimateCollapseError(std::size_t edge, double length, double time)
    : Error("estimate collapse on edge " + std::to_string(edge) + format_time(time) + ": |xi_ij| = " +
            std::to_string(length) + " below floor"),
      edge_(edge),
      length_(length),
      time_(time) {}

NonFiniteStateError::NonFiniteStateError(double time)
    : Error("estimator state became non-finite" + format_time(time)), time_(time) {}

Vector true_unscaled_positions(const Se2Framework& f, std::size_t iota, std::size_t kappa) {
  const std::size_t n = f.vertex_count();
  if (iota >= n || kappa >= n) throw InvalidArgument("iota/kappa out of range");
  if (iota == kappa) throw InvalidArgument("iota and kappa must differ");
  const double scale = (f.position(iota) - f.position(kappa)).norm();
  if (scale == 0.0) throw InvalidArgument("agents iota and kappa coincide");
  const Mat2 to_body = rotation_matrix(f.attitude(iota)).transpose();
  Vector xi(2 * idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    xi.segment<2>(2 * idx(i)) = to_body * (f.position(i) - f.position(iota)) / scale;
  }
  return xi;
}

Vector true_relative_attitudes(const Se2Framework& f, std::size_t iota) {
  const std::size_t n = f.vertex_count();
  if (iota >= n) throw InvalidArgument("iota out of range");
  Vector theta(idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    theta(idx(i)) = angle_difference(f.attitudes()(idx(iota)), f.attitudes()(idx(i)));
  }
  return theta;
}

EstimatorState true_state(const Se2Framework& f, std::size_t iota, std::size_t kappa) {
  return EstimatorState{true_unscaled_positions(f, iota, kappa), true_relative_attitudes(f, iota)};
}

EstimatorState perturb_truth(const Se2Framework& f, std::size_t iota, std::size_t kappa, double magnitude,
                             std::uint64_t seed) {
  if (!(magnitude >= 0.0)) throw InvalidArgument("perturbation magnitude must be nonnegative");
  EstimatorState s = true_state(f, iota, kappa);
  if (magnitude == 0.0) return s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-magnitude, magnitude);
  for (Eigen::Index i = 0; i < s.xi_hat.size(); ++i) s.xi_hat(i) += noise(rng);
  for (Eigen::Index i = 0; i < s.theta_hat.size(); ++i) s.theta_hat(i) = wrap_angle(s.theta_hat(i) + noise(rng));
  return s;
}

Vector estimated_bearings(const EstimatorState& s, const DirectedGraph& g, double epsilon_floor) {
  require_sizes(s, g);
  require_separated(s, g, epsilon_floor);
  Vector b(idx(g.edge_count()));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const Vec2 d = s.xi(e.tail) - s.xi(e.head);
    const Vec2 r = rotation_matrix(Angle(s.theta_hat(idx(e.head)))) * (d / d.norm());
    b(idx(k)) = std::atan2(r.y(), r.x());
  }
  return b;
}

Vector bearing_error(const Vector& measured, const EstimatorState& s, const DirectedGraph& g,
                     double epsilon_floor) {
  if (measured.size() != idx(g.edge_count())) {
    throw InvalidArgument("measured bearings must have one entry per edge");
  }
  const Vector estimated = estimated_bearings(s, g, epsilon_floor);
  Vector e(measured.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) e(k) = angle_difference(measured(k), estimated(k));
  return e;
}

Matrix bearing_error_jacobian(const EstimatorState& s, const DirectedGraph& g, double epsilon_floor) {
  require_sizes(s, g);
  require_separated(s, g, epsilon_floor);
  const auto n = idx(g.vertex_count());
  Matrix jac(idx(g.edge_count()), 3 * n);
  jac.leftCols(2 * n) = -bearing_position_jacobian(g, s.xi_hat);
  jac.rightCols(n) = -g.out_incidence_matrix().transpose();
  return jac;
}

double cost(const EstimatorState& s, const Vector& measured, const EstimatorConfig& cfg, const DirectedGraph& g) {
  const Vector e = bearing_error(measured, s, g, cfg.epsilon_floor);
  const Gains& k = cfg.gains;
  const double anchor = s.xi(cfg.iota).squaredNorm();
  const double scale = s.xi(cfg.kappa).squaredNorm() - 1.0;
  const double heading = 1.0 - std::cos(s.theta_hat(idx(cfg.iota)));
  return 0.5 * (k.k_e * e.squaredNorm() + k.k1 * anchor + k.k2 * scale * scale + k.k3 * heading);
}

Vector gradient_flow_rhs(const EstimatorState& s, const Vector& measured, const EstimatorConfig& cfg,
                         const DirectedGraph& g) {
  const Vector e = bearing_error(measured, s, g, cfg.epsilon_floor);
  const Matrix jac = bearing_error_jacobian(s, g, cfg.epsilon_floor);
  const Gains& k = cfg.gains;
  const auto n = idx(g.vertex_count());

  Vector rhs = -k.k_e * (jac.transpose() * e);

  const Vec2 xi_ii = s.xi(cfg.iota);
  const Vec2 xi_ik = s.xi(cfg.kappa);
  rhs.segment<2>(2 * idx(cfg.iota)) -= k.k1 * xi_ii;
  rhs.segment<2>(2 * idx(cfg.kappa)) -= 2.0 * k.k2 * (xi_ik.squaredNorm() - 1.0) * xi_ik;
  rhs(2 * n + idx(cfg.iota)) -= 0.5 * k.k3 * std::sin(s.theta_hat(idx(cfg.iota)));
  return rhs;
}

double cumulative_position_error(const EstimatorState& s, const Vector& truth_xi) {
  if (truth_xi.size() != s.xi_hat.size()) {
    throw InvalidArgument("truth and estimate differ in agent count");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < truth_xi.size() / 2; ++i) {
    total += (truth_xi.segment<2>(2 * i) - s.xi_hat.segment<2>(2 * i)).norm();
  }
  return total;
}

TrajectoryTrace integrate(const EstimatorState& s0, const Vector& measured, const EstimatorConfig& cfg,
                          const DirectedGraph& g, const Vector& truth_xi, const TraceObserver& observer) {
  const std::size_t n = g.vertex_count();
  cfg.validate(n);
  require_sizes(s0, g);
  const auto dim = 3 * idx(n);
  const auto steps = static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt));

  TrajectoryTrace trace;
  trace.n_agents = n;
  trace.n_edges = g.edge_count();
  double t = 0.0;

  auto record = [&](const Vector& y) {
    TraceSample sample;
    sample.time = t;
    sample.state = EstimatorState::from_stacked(y);
    sample.bearing_error = bearing_error(measured, sample.state, g, cfg.epsilon_floor);
    sample.position_error = cumulative_position_error(sample.state, truth_xi);
    sample.cost = cost(sample.state, measured, cfg, g);
    trace.push(sample);
    if (observer) observer(sample);
  };

  auto field = [&](const Vector& y) {
    return gradient_flow_rhs(EstimatorState::from_stacked(y), measured, cfg, g);
  };

  Vector y = s0.stacked();
  try {
    record(y);
    for (std::size_t step = 1; step <= steps; ++step) {
      const double h = cfg.dt;
      if (cfg.integrator == Integrator::Rk4) {
        const Vector k1 = field(y);
        const Vector k2 = field(y + 0.5 * h * k1);
        const Vector k3 = field(y + 0.5 * h * k2);
        const Vector k4 = field(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      } else {
        y += h * field(y);
      }
      t = static_cast<double>(step) * cfg.dt;
      if (!y.allFinite()) throw NonFiniteStateError(t);
      for (Eigen::Index i = 2 * idx(n); i < dim; ++i) y(i) = wrap_angle(y(i));
      if (step % cfg.sample_stride == 0 || step == steps) record(y);
    }
  } catch (const EstimateCollapseError& err) {
    throw EstimateCollapseError(err.edge(), err.length(), t);
  }
  return trace;
}

}  // namespace bse2
