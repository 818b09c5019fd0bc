#include "bse2/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "bse2/numdiff.hpp"
#include "bse2/random.hpp"
#include "bse2/report.hpp"
#include "bse2/svg_plot.hpp"
#include "bse2/trace_csv.hpp"

namespace bse2 {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

AnalysisOutcome run_analysis(const Scenario& s) {
  const Se2Framework f = to_framework(s);
  AnalysisOutcome out;
  out.report = analyze(f, s.analysis.rank_tolerance);
  out.text = format_report(out.report, "scenario: " + s.name);
  out.document = to_json(out.report);
  out.document["scenario"] = s.name;
  out.exit_status = out.report.rigid_by_theorem ? exit_status::kOk : exit_status::kNegative;
  return out;
}

Scenario apply_overrides(Scenario s, const EstimationOverrides& o) {
  if (o.seed) s.sim.seed = *o.seed;
  if (o.dt) s.sim.dt = *o.dt;
  if (o.t_final) s.sim.t_final = *o.t_final;
  validate(s);
  return s;
}

EstimationOutcome run_estimation(const Scenario& s, const std::filesystem::path& out_dir) {
  EstimationOutcome out;
  out.analysis = run_analysis(s);
  const Se2Framework f = to_framework(s);
  const EstimatorConfig cfg = to_estimator_config(s);
  cfg.validate(f.vertex_count());

  out.truth = true_state(f, cfg.iota, cfg.kappa);
  const Vector measured = bearing_rigidity_function(f);
  const EstimatorState s0 = perturb_truth(f, cfg.iota, cfg.kappa, s.sim.perturbation_magnitude, s.sim.seed);

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(out_dir / "trace.csv", std::ios::binary);
  if (!csv) throw Error("cannot write " + (out_dir / "trace.csv").string());
  TraceCsvWriter writer(csv, f.edge_count(), f.vertex_count());

  std::ostringstream header;
  header << out.analysis.text << "\nestimator: iota = agent " << s.iota << ", kappa = agent " << s.kappa
         << ", gains k_e = " << cfg.gains.k_e << ", k1 = " << cfg.gains.k1 << ", k2 = " << cfg.gains.k2
         << ", k3 = " << cfg.gains.k3 << "\n"
         << "integrator: " << (cfg.integrator == Integrator::Rk4 ? "rk4" : "euler") << ", dt = " << cfg.dt
         << ", t_final = " << cfg.t_final << "\n"
         << "initial perturbation: " << s.sim.perturbation_magnitude << " (seed " << s.sim.seed << ")\n";

  try {
    out.trace = integrate(s0, measured, cfg, f.graph(), out.truth.xi_hat,
                          [&writer](const TraceSample& sample) { writer.write(sample); });
  } catch (const Error& err) {
    csv.flush();
    write_text(out_dir / "report.txt", header.str() + "estimation aborted: " + err.what() + "\n");
    throw;
  }

  out.final_position_error = out.trace.cumulative_position_error.back();
  out.final_bearing_error = out.trace.bearing_errors.back().cwiseAbs().maxCoeff();
  out.converged =
      out.final_position_error <= kConvergedPositionError && out.final_bearing_error <= kConvergedBearingError;
  out.exit_status = out.converged ? exit_status::kOk : exit_status::kNegative;

  std::ostringstream text;
  text << header.str() << "initial e_p: " << sci(out.trace.cumulative_position_error.front()) << "\n"
       << "final e_p: " << sci(out.final_position_error) << " (converged if <= " << sci(kConvergedPositionError)
       << ")\n"
       << "final |e|_inf: " << sci(out.final_bearing_error) << " (converged if <= " << sci(kConvergedBearingError)
       << ")\n"
       << "final J: " << sci(out.trace.cost.back()) << "\n"
       << "estimator verdict: " << (out.converged ? "converged" : "did not converge") << "\n";
  out.text = text.str();
  write_text(out_dir / "report.txt", out.text);

  nlohmann::json doc = out.analysis.document;
  doc["estimation"] = {{"final_position_error", out.final_position_error},
                       {"final_bearing_error_inf", out.final_bearing_error},
                       {"final_cost", out.trace.cost.back()},
                       {"converged", out.converged},
                       {"samples", out.trace.size()}};
  write_text(out_dir / "report.json", doc.dump(2) + "\n");

  write_text(out_dir / "e.svg", render_bearing_error_plot(out.trace, s.name + ": bearing error e(t)"));
  write_text(out_dir / "ep.svg", render_position_error_plot(out.trace, s.name + ": cumulative position error"));
  write_text(out_dir / "traj.svg", render_trajectory_plot(out.trace, out.truth, s.name + ": estimated poses"));
  return out;
}

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  std::vector<SelftestCheck> checks;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, 8);

  // Bearing rigidity matrix against central differences of the bearing function.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Se2Framework f = random_framework(rng, size(rng));
      const auto n = static_cast<Eigen::Index>(f.vertex_count());
      Vector x(3 * n);
      x << f.positions(), f.attitudes();
      const auto b_of = [&](const Vector& y) {
        return bearing_rigidity_function(Se2Framework(f.graph(), y.head(2 * n), y.tail(n)));
      };
      const Matrix fd = central_difference_jacobian(b_of, x, 1e-6, wrap_angle);
      const Matrix b = bearing_rigidity_matrix(f);
      worst = std::max(worst, ((fd - b).cwiseAbs().array() / (1.0 + b.cwiseAbs().array())).maxCoeff());
    }
    checks.push_back({"bearing Jacobian vs finite differences", worst <= 1e-5, "max scaled error " + sci(worst)});
  }

  // Estimator flow against central differences of the cost.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Se2Framework f = random_framework(rng, size(rng));
      EstimatorConfig cfg;
      cfg.iota = 0;
      cfg.kappa = 1;
      const Vector measured = bearing_rigidity_function(f);
      const EstimatorState s = perturb_truth(f, cfg.iota, cfg.kappa, 0.2, rng());
      const auto j_of = [&](const Vector& y) {
        return cost(EstimatorState::from_stacked(y), measured, cfg, f.graph());
      };
      const Vector fd = central_difference_gradient(j_of, s.stacked(), 1e-7);
      const Vector rhs = gradient_flow_rhs(s, measured, cfg, f.graph());
      worst = std::max(worst, ((rhs + fd).cwiseAbs().array() / (1.0 + fd.cwiseAbs().array())).maxCoeff());
    }
    checks.push_back({"gradient flow vs finite differences of J", worst <= 1e-5, "max scaled error " + sci(worst)});
  }

  // Coordinated rotation identities.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Se2Framework f = random_framework(rng, size(rng));
      const auto n = static_cast<Eigen::Index>(f.vertex_count());
      const Vector z = coordinated_rotation_vector(f);
      const Vector d = edge_length_squared_matrix(f).diagonal();
      worst = std::max(worst, (parallel_rigidity_matrix(f) * z.head(2 * n) - d).cwiseAbs().maxCoeff());
      worst = std::max(worst, (bearing_rigidity_matrix(f) * z).cwiseAbs().maxCoeff());
    }
    checks.push_back({"coordinated rotation identities", worst <= 1e-10, "max residual " + sci(worst)});
  }

  // Trivial motions lie in the nullspace.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Se2Framework f = random_framework(rng, size(rng));
      worst = std::max(worst, (bearing_rigidity_matrix(f) * trivial_motion_basis(f)).cwiseAbs().maxCoeff());
    }
    checks.push_back({"trivial motions in nullspace", worst <= 1e-10, "max residual " + sci(worst)});
  }

  // Estimated bearings reproduce the measurements at the true state.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Se2Framework f = random_framework(rng, size(rng));
      const Vector b = bearing_rigidity_function(f);
      const Vector bh = estimated_bearings(true_state(f, 0, 1), f.graph());
      for (Eigen::Index k = 0; k < b.size(); ++k) worst = std::max(worst, std::abs(angle_difference(b(k), bh(k))));
    }
    checks.push_back({"estimated bearings at truth", worst <= 1e-12, "max wrapped error " + sci(worst)});
  }

  // Demo instances.
  {
    const RigidityReport rigid = analyze(to_framework(builtin_demo(DemoKind::Rigid)));
    const RigidityReport flex = analyze(to_framework(builtin_demo(DemoKind::RotoFlexible)));
    const bool ok = rigid.rigid_by_theorem && rigid.bearing_rank == 14 && !flex.rigid_by_theorem;
    checks.push_back({"demo rigidity", ok,
                      "rigid demo rank " + std::to_string(rigid.bearing_rank) + ", roto-flexible demo rank " +
                          std::to_string(flex.bearing_rank)});
  }
  return checks;
}

}  // namespace bse2
