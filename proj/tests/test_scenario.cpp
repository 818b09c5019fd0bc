#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "bse2/rigidity.hpp"
#include "bse2/scenario.hpp"

using namespace bse2;

namespace {

constexpr const char* kMinimal = R"({
  "name": "pair",
  "agents": [
    {"id": 1, "x": 0.0, "y": 0.0, "psi": 0.0},
    {"id": 2, "x": 1.0, "y": 0.0, "psi": 90.0}
  ],
  "edges": [[1, 2], [2, 1]]
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST(Scenario, MinimalFileTakesDefaults) {
  const Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.name, "pair");
  EXPECT_EQ(s.angle_unit, AngleUnit::Degrees);
  EXPECT_EQ(s.agents.size(), 2u);
  EXPECT_EQ(s.edges.size(), 2u);
  EXPECT_EQ(s.gains, (Gains{5.0, 100.0, 100.0, 100.0}));
  EXPECT_EQ(s.sim.dt, 1e-3);
  EXPECT_EQ(s.sim.t_final, 10.0);
  EXPECT_EQ(s.sim.integrator, Integrator::Rk4);
  EXPECT_EQ(s.analysis.rank_tolerance, 1e-8);
  EXPECT_EQ(s.iota, 1);
  EXPECT_EQ(s.kappa, 2);

  const Se2Framework f = to_framework(s);
  EXPECT_NEAR(f.attitude(1).value(), std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(f.graph().edge(0), (Edge{0, 1}));
  const EstimatorConfig c = to_estimator_config(s);
  EXPECT_EQ(c.iota, 0u);
  EXPECT_EQ(c.kappa, 1u);
}

TEST(Scenario, RadiansFlag) {
  const Scenario s = parse_scenario(with(with(kMinimal, "\"psi\": 90.0", "\"psi\": 1.5"), "\"name\": \"pair\",",
                                         "\"name\": \"pair\", \"angle_unit\": \"radians\","));
  EXPECT_EQ(s.angle_unit, AngleUnit::Radians);
  EXPECT_EQ(to_framework(s).attitude(1).value(), 1.5);
}

TEST(Scenario, DuplicateIdRejected) {
  try {
    (void)parse_scenario(with(kMinimal, "\"id\": 2", "\"id\": 1"));
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_NE(e.field().find("agents"), std::string::npos) << e.field();
  }
}

TEST(Scenario, IotaEqualsKappaRejected) {
  try {
    (void)parse_scenario(with(kMinimal, "\"name\": \"pair\",", "\"name\": \"pair\", \"iota\": 2, \"kappa\": 2,"));
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.field(), "kappa");
  }
}

TEST(Scenario, OtherValidationErrors) {
  EXPECT_THROW((void)parse_scenario(with(kMinimal, "[2, 1]", "[2, 2]")), ScenarioError);
  EXPECT_THROW((void)parse_scenario(with(kMinimal, "[2, 1]", "[2, 3]")), ScenarioError);
  EXPECT_THROW((void)parse_scenario(with(kMinimal, "[2, 1]", "[1, 2]")), ScenarioError);
  EXPECT_THROW((void)parse_scenario(with(kMinimal, "\"name\"", "\"nmae\"")), ScenarioError);
  EXPECT_THROW((void)parse_scenario(with(kMinimal, "\"x\": 1.0", "\"x\": \"one\"")), ScenarioError);
}

TEST(Scenario, SyntaxErrorReportsLine) {
  try {
    (void)parse_scenario(with(kMinimal, "\"psi\": 90.0}", "\"psi\": 90.0"));
    FAIL();
  } catch (const ScenarioError& e) {
    ASSERT_TRUE(e.line().has_value());
    EXPECT_EQ(*e.line(), 6u);
  }
}

TEST(Scenario, RoundTrip) {
  for (const DemoKind k : {DemoKind::Rigid, DemoKind::RotoFlexible}) {
    Scenario s = builtin_demo(k);
    s.sim.seed = 17;
    s.sim.integrator = Integrator::ExplicitEuler;
    s.analysis.rank_tolerance = 1e-9;
    EXPECT_EQ(parse_scenario(dump_scenario(s)), s);

    const auto path = std::filesystem::temp_directory_path() / ("bse2_roundtrip_" + std::string(to_string(k)) + ".json");
    save_scenario(s, path);
    EXPECT_EQ(load_scenario(path), s);
    std::filesystem::remove(path);
  }
}

TEST(Scenario, MissingFile) {
  EXPECT_THROW((void)load_scenario("/nonexistent/bse2/scenario.json"), Error);
}

TEST(Scenario, Demos) {
  const Scenario rigid = builtin_demo(DemoKind::Rigid);
  const Scenario flex = builtin_demo(DemoKind::RotoFlexible);
  EXPECT_EQ(rigid.agents.size(), 6u);
  EXPECT_EQ(flex.agents.size(), 6u);
  EXPECT_EQ(rigid.agents, flex.agents);
  const RigidityReport r = analyze(to_framework(rigid));
  EXPECT_TRUE(r.rigid_by_theorem);
  EXPECT_EQ(r.bearing_rank, 14);
  EXPECT_FALSE(analyze(to_framework(flex)).rigid_by_theorem);
}

TEST(Scenario, DemoNames) {
  EXPECT_EQ(parse_demo_kind("rigid"), DemoKind::Rigid);
  EXPECT_EQ(parse_demo_kind("roto-flexible"), DemoKind::RotoFlexible);
  EXPECT_EQ(parse_demo_kind("roto_flexible"), DemoKind::RotoFlexible);
  EXPECT_FALSE(parse_demo_kind("wobbly").has_value());
  EXPECT_EQ(to_string(DemoKind::RotoFlexible), "roto-flexible");
}
