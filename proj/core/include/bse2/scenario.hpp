#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bse2/error.hpp"
#include "bse2/estimator.hpp"
#include "bse2/framework.hpp"
#include "bse2/linalg.hpp"

namespace bse2 {

enum class AngleUnit { Degrees, Radians };

/// One agent as written in a scenario file. `psi` is in the scenario's angle unit.
struct AgentSpec {
  int id = 0;  // 1-based
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

struct SimSettings {
  double dt = 1e-3;
  double t_final = 10.0;
  Integrator integrator = Integrator::Rk4;
  double perturbation_magnitude = 0.1;
  std::uint64_t seed = 1;
  std::size_t sample_stride = 1;

  friend bool operator==(const SimSettings&, const SimSettings&) = default;
};

struct AnalysisSettings {
  double rank_tolerance = kDefaultRankTolerance;

  friend bool operator==(const AnalysisSettings&, const AnalysisSettings&) = default;
};

/// Document model of a scenario file. Agent ids and edge endpoints are the
/// 1-based ids used in files; to_framework() maps id k to vertex k - 1.
struct Scenario {
  std::string name;
  AngleUnit angle_unit = AngleUnit::Degrees;
  std::vector<AgentSpec> agents;
  std::vector<std::pair<int, int>> edges;  // (head id, tail id)
  int iota = 1;
  int kappa = 2;
  Gains gains;
  SimSettings sim;
  AnalysisSettings analysis;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Malformed or invalid scenario document. `field()` names the offending
/// entry (e.g. "agents[2].id"); `line()` is set for syntax errors.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string field, const std::string& message, std::optional<std::size_t> line = std::nullopt);

  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::string field_;
  std::optional<std::size_t> line_;
};

/// Parses and validates a JSON scenario document; missing optional sections
/// take the defaults above.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

std::string dump_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Throws ScenarioError naming the first invalid field.
void validate(const Scenario& s);

Se2Framework to_framework(const Scenario& s);
EstimatorConfig to_estimator_config(const Scenario& s);

enum class DemoKind { Rigid, RotoFlexible };

/// The two six-agent case studies on a shared hexagonal placement.
Scenario builtin_demo(DemoKind which);
std::optional<DemoKind> parse_demo_kind(std::string_view name);
std::string_view to_string(DemoKind which);

}  // namespace bse2
