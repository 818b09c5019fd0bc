#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "bse2/error.hpp"
#include "bse2/framework.hpp"
#include "bse2/graph.hpp"

namespace bse2 {

/// Weights of the estimator cost: bearing error, reference-agent anchor,
/// unit-scale anchor, reference-attitude anchor.
struct Gains {
  double k_e = 5.0;
  double k1 = 100.0;
  double k2 = 100.0;
  double k3 = 100.0;

  friend bool operator==(const Gains&, const Gains&) = default;
};

enum class Integrator { Rk4, ExplicitEuler };

struct EstimatorConfig {
  std::size_t iota = 0;   // reference agent: origin and orientation of the estimate frame
  std::size_t kappa = 1;  // scale agent: distance iota-kappa is the unit length
  Gains gains;
  double dt = 1e-3;
  double t_final = 10.0;
  Integrator integrator = Integrator::Rk4;
  double epsilon_floor = 1e-9;  // smallest admissible estimated edge length
  std::size_t sample_stride = 1;

  /// Throws InvalidArgument on any violated invariant.
  void validate(std::size_t n_vertices) const;
};

/// Unscaled positions (interleaved, in the reference agent's body frame) and
/// relative attitudes (radians, wrapped) of every agent.
struct EstimatorState {
  Vector xi_hat;
  Vector theta_hat;

  std::size_t agent_count() const noexcept { return static_cast<std::size_t>(theta_hat.size()); }
  Vec2 xi(std::size_t i) const { return xi_hat.segment<2>(2 * static_cast<Eigen::Index>(i)); }

  /// [xi_hat; theta_hat], length 3n.
  Vector stacked() const;
  static EstimatorState from_stacked(const Vector& y);
};

struct TraceSample {
  double time = 0.0;
  EstimatorState state;
  Vector bearing_error;
  double position_error = 0.0;
  double cost = 0.0;
};

struct TrajectoryTrace {
  std::size_t n_agents = 0;
  std::size_t n_edges = 0;
  std::vector<double> times;
  std::vector<EstimatorState> states;
  std::vector<Vector> bearing_errors;
  std::vector<double> cumulative_position_error;
  std::vector<double> cost;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  void push(const TraceSample& s);
  TraceSample sample(std::size_t i) const;
};

/// Estimated edge length fell below the configured floor. time() is NaN when
/// raised outside integrate().
class EstimateCollapseError : public Error {
 public:
  EstimateCollapseError(std::size_t edge, double length, double time = std::numeric_limits<double>::quiet_NaN());

  std::size_t edge() const noexcept { return edge_; }
  double length() const noexcept { return length_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t edge_;
  double length_;
  double time_;
};

class NonFiniteStateError : public Error {
 public:
  explicit NonFiniteStateError(double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// xi_{iota i} = T(psi_iota)^T (p_i - p_iota) / |p_iota - p_kappa|.
Vector true_unscaled_positions(const Se2Framework& f, std::size_t iota, std::size_t kappa);

/// theta_i = wrap(psi_iota - psi_i), so that T(theta_i) = T(psi_i)^T T(psi_iota).
Vector true_relative_attitudes(const Se2Framework& f, std::size_t iota);

EstimatorState true_state(const Se2Framework& f, std::size_t iota, std::size_t kappa);

/// Truth plus i.i.d. uniform noise in [-magnitude, magnitude] on every
/// coordinate and angle. Deterministic in `seed`.
EstimatorState perturb_truth(const Se2Framework& f, std::size_t iota, std::size_t kappa, double magnitude,
                             std::uint64_t seed);

/// Bearings predicted by the estimate: for edge (i, j),
/// atan2 of T(theta_i) (xi_j - xi_i) / |xi_j - xi_i|.
Vector estimated_bearings(const EstimatorState& s, const DirectedGraph& g, double epsilon_floor = 1e-9);

/// e = wrap(measured - estimated), per edge.
Vector bearing_error(const Vector& measured, const EstimatorState& s, const DirectedGraph& g,
                     double epsilon_floor = 1e-9);

/// Jacobian of the bearing error with respect to the stacked estimate:
/// -[D^{-1}(xi) R_par(xi) | Ebar^T], |E| x 3n.
Matrix bearing_error_jacobian(const EstimatorState& s, const DirectedGraph& g, double epsilon_floor = 1e-9);

/// J = 1/2 (k_e |e|^2 + k1 |xi_ii|^2 + k2 (|xi_ik|^2 - 1)^2 + k3 (1 - cos theta_i)),
/// with i = iota, k = kappa.
double cost(const EstimatorState& s, const Vector& measured, const EstimatorConfig& cfg, const DirectedGraph& g);

/// -grad J, stacked as [xi rates; theta rates].
Vector gradient_flow_rhs(const EstimatorState& s, const Vector& measured, const EstimatorConfig& cfg,
                         const DirectedGraph& g);

/// Sum over agents of |xi_i - xi_hat_i|.
double cumulative_position_error(const EstimatorState& s, const Vector& truth_xi);

using TraceObserver = std::function<void(const TraceSample&)>;

/// Fixed-step integration of the gradient flow from t = 0 to cfg.t_final.
/// Samples every `sample_stride` steps plus the final step; each sample is
/// passed to `observer` (if any) as soon as it is taken. Attitudes are wrapped
/// after every step. Throws EstimateCollapseError / NonFiniteStateError with
/// the failing time; samples already observed stay delivered.
TrajectoryTrace integrate(const EstimatorState& s0, const Vector& measured, const EstimatorConfig& cfg,
                          const DirectedGraph& g, const Vector& truth_xi, const TraceObserver& observer = {});

}  // namespace bse2
