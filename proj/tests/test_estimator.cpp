#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bse2/error.hpp"
#include "bse2/estimator.hpp"
#include "bse2/random.hpp"
#include "test_helpers.hpp"

using namespace bse2;
using testing_support::vec;
constexpr double pi = std::numbers::pi;

namespace {

EstimatorState state(std::initializer_list<double> xi, std::initializer_list<double> theta) {
  return EstimatorState{vec(xi), vec(theta)};
}

double max_wrapped(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) m = std::max(m, std::abs(oracle::wrap(a(k) - b(k))));
  return m;
}

EstimatorConfig config(std::size_t iota, std::size_t kappa) {
  EstimatorConfig c;
  c.iota = iota;
  c.kappa = kappa;
  return c;
}

}  // namespace

TEST(Estimator, TrueUnscaledPositions) {
  const Se2Framework f(DirectedGraph(3, {{0, 1}}), vec({0, 0, 2, 0, 2, 2}), vec({0, 0, 0}));
  EXPECT_TRUE(true_unscaled_positions(f, 0, 1).isApprox(vec({0, 0, 1, 0, 1, 1})));

  const Se2Framework g(DirectedGraph(2, {{0, 1}}), vec({0, 0, 0, 1}), vec({pi / 2, 0}));
  const Vector xi = true_unscaled_positions(g, 0, 1);
  EXPECT_NEAR(xi(2), 1.0, 1e-15);
  EXPECT_NEAR(xi(3), 0.0, 1e-15);
  EXPECT_EQ(xi(0), 0.0);
  EXPECT_EQ(xi(1), 0.0);
}

TEST(Estimator, TrueRelativeAttitudes) {
  const Se2Framework same(DirectedGraph(2, {{0, 1}}), vec({0, 0, 1, 0}), vec({0.7, 0.7}));
  EXPECT_EQ(true_relative_attitudes(same, 0), vec({0, 0}));
  const Se2Framework f(DirectedGraph(2, {{0, 1}}), vec({0, 0, 1, 0}), vec({pi / 2, 0}));
  EXPECT_NEAR(true_relative_attitudes(f, 0)(1), pi / 2, 1e-15);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const Se2Framework r = random_framework(rng, 4);
    const Vector th = true_relative_attitudes(r, 2);
    for (std::size_t i = 0; i < 4; ++i) {
      const Mat2 expected = rotation_matrix(r.attitude(i)).transpose() * rotation_matrix(r.attitude(2));
      EXPECT_LE((rotation_matrix(Angle(th(static_cast<Eigen::Index>(i)))) - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Estimator, EstimatedBearingExamples) {
  const DirectedGraph g(2, {{0, 1}, {1, 0}});
  const Vector b = estimated_bearings(state({0, 0, 1, 0}, {0, 0}), g);
  EXPECT_NEAR(b(0), 0.0, 1e-15);
  EXPECT_NEAR(b(1), pi, 1e-15);
  EXPECT_NEAR(estimated_bearings(state({0, 0, 1, 0}, {pi / 4, 0}), g)(0), pi / 4, 1e-15);
  EXPECT_THROW((void)estimated_bearings(state({0, 0, 0, 0}, {0, 0}), g), EstimateCollapseError);
}

TEST(Estimator, BearingErrorExamples) {
  const DirectedGraph g(3, {{0, 1}, {1, 2}});
  const EstimatorState s = state({0, 0, 1, 0, 1, 1}, {0, 0, 0});
  const Vector est = estimated_bearings(s, g);
  EXPECT_LE(bearing_error(est, s, g).norm(), 1e-15);

  const Vector err = bearing_error(est - vec({0, 0.1}), s, g);
  EXPECT_NEAR(err(0), 0.0, 1e-15);
  EXPECT_NEAR(err(1), -0.1, 1e-15);

  const DirectedGraph one(2, {{0, 1}});
  const Vector wrapped = bearing_error(vec({pi - 0.05}), state({0, 0, 1, 0}, {-pi + 0.05, 0}), one);
  EXPECT_NEAR(wrapped(0), -0.1, 1e-14);
}

TEST(Estimator, CostExamples) {
  const DirectedGraph g(2, {{0, 1}});
  const EstimatorConfig c = config(0, 1);
  const EstimatorState at_min = state({0, 0, 1, 0}, {0, 0});
  EXPECT_EQ(cost(at_min, vec({0.0}), c, g), 0.0);

  const EstimatorState stretched = state({0, 0, 2, 0}, {0, 0});
  EXPECT_NEAR(cost(stretched, vec({0.0}), c, g), 450.0, 1e-12);

  // e stays zero when the measured bearing already accounts for theta_iota = pi.
  const EstimatorState flipped = state({0, 0, 1, 0}, {pi, 0});
  EXPECT_NEAR(cost(flipped, vec({pi}), c, g), 100.0, 1e-12);
}

TEST(Estimator, EquilibriumAtTruth) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const Se2Framework f = random_framework(rng, 5);
    const EstimatorConfig c = config(0, 3);
    const EstimatorState s = true_state(f, 0, 3);
    const Vector measured = bearing_rigidity_function(f);
    EXPECT_LE(max_wrapped(estimated_bearings(s, f.graph()), measured), 1e-12);
    EXPECT_LE(gradient_flow_rhs(s, measured, c, f.graph()).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_LE(cost(s, measured, c, f.graph()), 1e-24);
  }
}

TEST(Estimator, FlowIsNegativeGradientOfCost) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> noise(-0.2, 0.2);
  std::uniform_int_distribution<std::size_t> size(2, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    const Se2Framework f = random_framework(rng, n);
    const EstimatorConfig c = config(n - 1, 0);
    EstimatorState s = true_state(f, c.iota, c.kappa);
    for (Eigen::Index k = 0; k < s.xi_hat.size(); ++k) s.xi_hat(k) += noise(rng);
    for (Eigen::Index k = 0; k < s.theta_hat.size(); ++k) s.theta_hat(k) += noise(rng);
    const Vector measured = bearing_rigidity_function(f);
    const auto edges = testing_support::edges_of(f.graph());
    const oracle::CostGains k{c.gains.k_e, c.gains.k1, c.gains.k2, c.gains.k3};
    const Vector fd = oracle::fd_gradient(
        [&](const Eigen::VectorXd& y) { return oracle::cost(y, measured, edges, c.iota, c.kappa, k); }, s.stacked(),
        1e-7);
    const Vector rhs = gradient_flow_rhs(s, measured, c, f.graph());
    for (Eigen::Index q = 0; q < rhs.size(); ++q)
      EXPECT_LE(std::abs(rhs(q) + fd(q)), std::max(1e-5 * std::abs(fd(q)), 1e-5 * fd.lpNorm<Eigen::Infinity>()))
          << "trial " << trial << " entry " << q;
  }
}

TEST(Estimator, ErrorJacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const Se2Framework f = random_framework(rng, 4);
    const EstimatorState s = true_state(f, 0, 1);
    const Vector measured = bearing_rigidity_function(f);
    const auto fd = oracle::fd_jacobian(
        [&](const Eigen::VectorXd& y) {
          return Eigen::VectorXd(bearing_error(measured, EstimatorState::from_stacked(y), f.graph()));
        },
        s.stacked(), 1e-6, true);
    EXPECT_LE((bearing_error_jacobian(s, f.graph()) - fd).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Estimator, RegularizationOnlyWithoutBearingGain) {
  const DirectedGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  EstimatorConfig c = config(0, 2);
  c.gains.k_e = 0.0;
  const EstimatorState s = state({0.1, -0.2, 0.5, 0.5, 1.5, 0.3}, {0.4, 1.0, -1.0});
  const Vector rhs = gradient_flow_rhs(s, vec({0.3, 0.2, 0.1}), c, g);
  // k1 * xi_iota, 2 k2 (|xi_kappa|^2 - 1) xi_kappa, (k3 / 2) sin theta_iota.
  const double r2 = 1.5 * 1.5 + 0.3 * 0.3 - 1.0;
  const Vector expected = -vec({100 * 0.1, 100 * -0.2, 0, 0, 200 * r2 * 1.5, 200 * r2 * 0.3, 50 * std::sin(0.4), 0, 0});
  EXPECT_LE((rhs - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ((rhs.array() != 0.0).count(), 5);
}

TEST(Estimator, CumulativePositionError) {
  EXPECT_EQ(cumulative_position_error(state({0, 0, 1, 1}, {0, 0}), vec({0, 0, 1, 1})), 0.0);
  EXPECT_NEAR(cumulative_position_error(state({0.3, 0.4, 1, 1}, {0, 0}), vec({0, 0, 1, 1})), 0.5, 1e-15);
  EXPECT_NEAR(cumulative_position_error(state({1, 0, 1, 2}, {0, 0}), vec({0, 0, 1, 1})), 2.0, 1e-15);
  EXPECT_THROW((void)cumulative_position_error(state({0, 0}, {0}), vec({0, 0, 1, 1})), InvalidArgument);
}

TEST(Estimator, PerturbTruth) {
  std::mt19937_64 rng(79);
  const Se2Framework f = random_framework(rng, 5);
  const EstimatorState truth = true_state(f, 1, 3);
  const EstimatorState zero = perturb_truth(f, 1, 3, 0.0, 7);
  EXPECT_EQ(zero.xi_hat, truth.xi_hat);
  EXPECT_EQ(zero.theta_hat, truth.theta_hat);

  const EstimatorState a = perturb_truth(f, 1, 3, 0.1, 42);
  const EstimatorState b = perturb_truth(f, 1, 3, 0.1, 42);
  EXPECT_EQ(a.xi_hat, b.xi_hat);
  EXPECT_EQ(a.theta_hat, b.theta_hat);
  EXPECT_NE(perturb_truth(f, 1, 3, 0.1, 43).xi_hat, a.xi_hat);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const EstimatorState p = perturb_truth(f, 1, 3, 0.1, seed);
    EXPECT_LE((p.xi_hat - truth.xi_hat).lpNorm<Eigen::Infinity>(), 0.1 + 1e-15);
    EXPECT_LE(max_wrapped(p.theta_hat, truth.theta_hat), 0.1 + 1e-15);
  }
  EXPECT_THROW((void)perturb_truth(f, 1, 3, -0.1, 1), InvalidArgument);
}

TEST(Estimator, IntegrateFromTruthDoesNotDrift) {
  std::mt19937_64 rng(83);
  const Se2Framework f = random_framework(rng, 4);
  EstimatorConfig c = config(0, 2);
  c.t_final = 1.0;
  const EstimatorState s0 = true_state(f, 0, 2);
  const TrajectoryTrace tr = integrate(s0, bearing_rigidity_function(f), c, f.graph(), s0.xi_hat);
  ASSERT_EQ(tr.size(), 1001u);
  EXPECT_EQ(tr.times.front(), 0.0);
  EXPECT_NEAR(tr.times.back(), 1.0, 1e-12);
  EXPECT_LE((tr.states.back().stacked() - s0.stacked()).lpNorm<Eigen::Infinity>(), 1e-9);
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
}

TEST(Estimator, SampleStride) {
  const Se2Framework f(DirectedGraph::complete(3), vec({0, 0, 1, 0, 0, 1}), vec({0, 0.5, 1}));
  EstimatorConfig c = config(0, 1);
  c.t_final = 0.1;
  c.sample_stride = 30;
  c.integrator = Integrator::ExplicitEuler;
  const EstimatorState s0 = perturb_truth(f, 0, 1, 0.05, 3);
  const TrajectoryTrace tr = integrate(s0, bearing_rigidity_function(f), c, f.graph(), true_state(f, 0, 1).xi_hat);
  // Steps 0, 30, 60, 90 and the final step 100.
  ASSERT_EQ(tr.size(), 5u);
  EXPECT_NEAR(tr.times.back(), 0.1, 1e-12);
}

TEST(Estimator, CollapseAbortsWithTimeAndEdge) {
  const DirectedGraph g(2, {{0, 1}});
  EstimatorConfig c = config(0, 1);
  c.epsilon_floor = 0.5;
  // Anchoring agent 1 at the origin drags it onto agent 0: |xi| = 0.6 exp(-100 t).
  c.iota = 1;
  c.kappa = 0;
  c.gains = Gains{0.0, 100.0, 0.0, 0.0};
  const EstimatorState s0 = state({0, 0, 0.6, 0}, {0, 0});
  std::size_t observed = 0;
  try {
    (void)integrate(s0, vec({0.0}), c, g, vec({0, 0, 1, 0}), [&](const TraceSample&) { ++observed; });
    FAIL() << "expected EstimateCollapseError";
  } catch (const EstimateCollapseError& e) {
    EXPECT_EQ(e.edge(), 0u);
    EXPECT_LT(e.length(), 0.5);
    EXPECT_GT(e.time(), 0.0);
    EXPECT_LT(e.time(), 0.01);
  }
  EXPECT_GT(observed, 0u);
}

TEST(Estimator, ConfigValidation) {
  EstimatorConfig c = config(0, 0);
  EXPECT_THROW(c.validate(3), InvalidArgument);
  c = config(0, 3);
  EXPECT_THROW(c.validate(3), InvalidArgument);
  c = config(0, 1);
  c.dt = 0.0;
  EXPECT_THROW(c.validate(3), InvalidArgument);
  c = config(0, 1);
  EXPECT_NO_THROW(c.validate(3));
}
