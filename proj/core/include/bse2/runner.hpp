#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bse2/estimator.hpp"
#include "bse2/rigidity.hpp"
#include "bse2/scenario.hpp"

namespace bse2 {

/// Process exit statuses shared by every command.
namespace exit_status {
inline constexpr int kOk = 0;        // rigid / converged / all checks passed
inline constexpr int kError = 1;     // invalid input, degenerate geometry, I/O, aborted run
inline constexpr int kNegative = 2;  // roto-flexible / not converged
}  // namespace exit_status

/// A run counts as converged when both final errors are within these bounds.
inline constexpr double kConvergedPositionError = 1e-3;
inline constexpr double kConvergedBearingError = 1e-6;

struct AnalysisOutcome {
  RigidityReport report;
  std::string text;
  nlohmann::json document;
  int exit_status = exit_status::kError;
};

/// Builds the framework and runs the rigidity analysis. Throws on invalid or
/// degenerate scenarios (DegenerateEdgeError names the edge).
AnalysisOutcome run_analysis(const Scenario& s);

struct EstimationOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<double> t_final;
};

Scenario apply_overrides(Scenario s, const EstimationOverrides& o);

struct EstimationOutcome {
  AnalysisOutcome analysis;
  EstimatorState truth;
  TrajectoryTrace trace;
  double final_position_error = 0.0;
  double final_bearing_error = 0.0;  // infinity norm
  bool converged = false;
  std::string text;
  int exit_status = exit_status::kError;
};

/// Perturbs the truth, integrates the estimator and writes trace.csv,
/// report.txt, report.json, e.svg, ep.svg and traj.svg into `out_dir`
/// (created if missing). On an estimator abort the CSV prefix and a report
/// naming the cause are written before the error propagates.
EstimationOutcome run_estimation(const Scenario& s, const std::filesystem::path& out_dir);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Finite-difference and algebraic-identity oracles on random frameworks and
/// the built-in demos.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 20240611);

}  // namespace bse2
