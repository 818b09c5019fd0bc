#include "bse2/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bse2 {

using nlohmann::json;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ScenarioError(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

const json& require_object(const json& v, const std::string& field) {
  if (!v.is_object()) throw ScenarioError(field, "expected an object");
  return v;
}

double number(const json& obj, const std::string& key, const std::string& field, std::optional<double> fallback) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ScenarioError(field, "missing required number");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ScenarioError(field, "expected a number");
  return v.get<double>();
}

long long integer(const json& obj, const std::string& key, const std::string& field,
                  std::optional<long long> fallback) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ScenarioError(field, "missing required integer");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ScenarioError(field, "expected an integer");
  return v.get<long long>();
}

std::string text_field(const json& obj, const std::string& key, const std::string& field,
                       std::optional<std::string> fallback) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ScenarioError(field, "missing required string");
  }
  const json& v = obj.at(key);
  if (!v.is_string()) throw ScenarioError(field, "expected a string");
  return v.get<std::string>();
}

std::string_view unit_name(AngleUnit u) { return u == AngleUnit::Degrees ? "degrees" : "radians"; }
std::string_view integrator_name(Integrator i) { return i == Integrator::Rk4 ? "rk4" : "euler"; }

Scenario from_json(const json& doc) {
  require_object(doc, "<document>");
  reject_unknown(doc, "", {"name", "angle_unit", "agents", "edges", "iota", "kappa", "gains", "sim", "analysis"});

  Scenario s;
  s.name = text_field(doc, "name", "name", std::string("scenario"));

  const std::string unit = text_field(doc, "angle_unit", "angle_unit", std::string("degrees"));
  if (unit == "degrees") {
    s.angle_unit = AngleUnit::Degrees;
  } else if (unit == "radians") {
    s.angle_unit = AngleUnit::Radians;
  } else {
    throw ScenarioError("angle_unit", "expected \"degrees\" or \"radians\", got \"" + unit + "\"");
  }

  if (!doc.contains("agents") || !doc.at("agents").is_array()) {
    throw ScenarioError("agents", "expected an array of agents");
  }
  const json& agents = doc.at("agents");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const json& a = require_object(agents[i], where);
    reject_unknown(a, where, {"id", "x", "y", "psi"});
    AgentSpec spec;
    spec.id = static_cast<int>(integer(a, "id", where + ".id", std::nullopt));
    spec.x = number(a, "x", where + ".x", std::nullopt);
    spec.y = number(a, "y", where + ".y", std::nullopt);
    spec.psi = number(a, "psi", where + ".psi", 0.0);
    s.agents.push_back(spec);
  }

  if (!doc.contains("edges") || !doc.at("edges").is_array()) {
    throw ScenarioError("edges", "expected an array of [head, tail] pairs");
  }
  const json& edges = doc.at("edges");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const json& e = edges[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ScenarioError(where, "expected [head id, tail id]");
    }
    s.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }

  s.iota = static_cast<int>(integer(doc, "iota", "iota", 1));
  s.kappa = static_cast<int>(integer(doc, "kappa", "kappa", 2));

  if (doc.contains("gains")) {
    const json& g = require_object(doc.at("gains"), "gains");
    reject_unknown(g, "gains", {"k_e", "k1", "k2", "k3"});
    s.gains.k_e = number(g, "k_e", "gains.k_e", s.gains.k_e);
    s.gains.k1 = number(g, "k1", "gains.k1", s.gains.k1);
    s.gains.k2 = number(g, "k2", "gains.k2", s.gains.k2);
    s.gains.k3 = number(g, "k3", "gains.k3", s.gains.k3);
  }

  if (doc.contains("sim")) {
    const json& m = require_object(doc.at("sim"), "sim");
    reject_unknown(m, "sim", {"dt", "t_final", "integrator", "perturbation_magnitude", "seed", "sample_stride"});
    s.sim.dt = number(m, "dt", "sim.dt", s.sim.dt);
    s.sim.t_final = number(m, "t_final", "sim.t_final", s.sim.t_final);
    const std::string integ = text_field(m, "integrator", "sim.integrator", std::string("rk4"));
    if (integ == "rk4") {
      s.sim.integrator = Integrator::Rk4;
    } else if (integ == "euler") {
      s.sim.integrator = Integrator::ExplicitEuler;
    } else {
      throw ScenarioError("sim.integrator", "expected \"rk4\" or \"euler\", got \"" + integ + "\"");
    }
    s.sim.perturbation_magnitude =
        number(m, "perturbation_magnitude", "sim.perturbation_magnitude", s.sim.perturbation_magnitude);
    const long long seed = integer(m, "seed", "sim.seed", static_cast<long long>(s.sim.seed));
    if (seed < 0) throw ScenarioError("sim.seed", "seed must be nonnegative");
    s.sim.seed = static_cast<std::uint64_t>(seed);
    const long long stride = integer(m, "sample_stride", "sim.sample_stride", 1);
    if (stride < 1) throw ScenarioError("sim.sample_stride", "sample_stride must be at least 1");
    s.sim.sample_stride = static_cast<std::size_t>(stride);
  }

  if (doc.contains("analysis")) {
    const json& a = require_object(doc.at("analysis"), "analysis");
    reject_unknown(a, "analysis", {"rank_tolerance"});
    s.analysis.rank_tolerance = number(a, "rank_tolerance", "analysis.rank_tolerance", s.analysis.rank_tolerance);
  }

  validate(s);
  return s;
}

json to_json(const Scenario& s) {
  json agents = json::array();
  for (const AgentSpec& a : s.agents) agents.push_back({{"id", a.id}, {"x", a.x}, {"y", a.y}, {"psi", a.psi}});
  json edges = json::array();
  for (const auto& [h, t] : s.edges) edges.push_back(json::array({h, t}));
  return json{
      {"name", s.name},
      {"angle_unit", unit_name(s.angle_unit)},
      {"agents", agents},
      {"edges", edges},
      {"iota", s.iota},
      {"kappa", s.kappa},
      {"gains", {{"k_e", s.gains.k_e}, {"k1", s.gains.k1}, {"k2", s.gains.k2}, {"k3", s.gains.k3}}},
      {"sim",
       {{"dt", s.sim.dt},
        {"t_final", s.sim.t_final},
        {"integrator", integrator_name(s.sim.integrator)},
        {"perturbation_magnitude", s.sim.perturbation_magnitude},
        {"seed", s.sim.seed},
        {"sample_stride", s.sim.sample_stride}}},
      {"analysis", {{"rank_tolerance", s.analysis.rank_tolerance}}},
  };
}

}  // namespace

ScenarioError::ScenarioError(std::string field, const std::string& message, std::optional<std::size_t> line)
    : Error((line ? "line " + std::to_string(*line) + ": " : std::string()) + field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

void validate(const Scenario& s) {
  const int n = static_cast<int>(s.agents.size());
  if (n < 2) throw ScenarioError("agents", "need at least two agents");
  std::set<int> ids;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const AgentSpec& a = s.agents[i];
    const std::string where = "agents[" + std::to_string(i) + "]";
    if (!ids.insert(a.id).second) throw ScenarioError(where + ".id", "duplicate agent id " + std::to_string(a.id));
    if (a.id < 1 || a.id > n) {
      throw ScenarioError(where + ".id", "agent ids must be 1.." + std::to_string(n) + ", got " + std::to_string(a.id));
    }
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.psi)) {
      throw ScenarioError(where, "coordinates must be finite");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    const auto [h, t] = s.edges[k];
    const std::string where = "edges[" + std::to_string(k) + "]";
    if (h < 1 || h > n || t < 1 || t > n) throw ScenarioError(where, "unknown agent id");
    if (h == t) throw ScenarioError(where, "self-loop");
    if (!seen.emplace(h, t).second) throw ScenarioError(where, "duplicate directed edge");
  }
  if (s.iota < 1 || s.iota > n) throw ScenarioError("iota", "unknown agent id " + std::to_string(s.iota));
  if (s.kappa < 1 || s.kappa > n) throw ScenarioError("kappa", "unknown agent id " + std::to_string(s.kappa));
  if (s.iota == s.kappa) throw ScenarioError("kappa", "iota and kappa must differ");
  const auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(s.gains.k_e)) throw ScenarioError("gains.k_e", "must be nonnegative");
  if (!nonneg(s.gains.k1)) throw ScenarioError("gains.k1", "must be nonnegative");
  if (!nonneg(s.gains.k2)) throw ScenarioError("gains.k2", "must be nonnegative");
  if (!nonneg(s.gains.k3)) throw ScenarioError("gains.k3", "must be nonnegative");
  if (!(std::isfinite(s.sim.dt) && s.sim.dt > 0.0)) throw ScenarioError("sim.dt", "must be positive");
  if (!(std::isfinite(s.sim.t_final) && s.sim.t_final >= s.sim.dt)) {
    throw ScenarioError("sim.t_final", "must be at least dt");
  }
  if (!nonneg(s.sim.perturbation_magnitude)) {
    throw ScenarioError("sim.perturbation_magnitude", "must be nonnegative");
  }
  if (s.sim.sample_stride < 1) throw ScenarioError("sim.sample_stride", "must be at least 1");
  if (!(std::isfinite(s.analysis.rank_tolerance) && s.analysis.rank_tolerance > 0.0)) {
    throw ScenarioError("analysis.rank_tolerance", "must be positive");
  }
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    throw ScenarioError("<document>", err.what(), line_of(text, err.byte == 0 ? 0 : err.byte - 1));
  }
  return from_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("<file>", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_scenario(s);
  if (!out) throw Error("failed writing " + path.string());
}

Se2Framework to_framework(const Scenario& s) {
  validate(s);
  const std::size_t n = s.agents.size();
  Vector positions(2 * static_cast<Eigen::Index>(n));
  Vector attitudes(static_cast<Eigen::Index>(n));
  for (const AgentSpec& a : s.agents) {
    const auto v = static_cast<Eigen::Index>(a.id - 1);
    positions(2 * v) = a.x;
    positions(2 * v + 1) = a.y;
    attitudes(v) = s.angle_unit == AngleUnit::Degrees ? degrees_to_radians(a.psi) : a.psi;
  }
  std::vector<Edge> edges;
  edges.reserve(s.edges.size());
  for (const auto& [h, t] : s.edges) {
    edges.push_back({static_cast<std::size_t>(h - 1), static_cast<std::size_t>(t - 1)});
  }
  return Se2Framework(DirectedGraph(n, std::move(edges)), std::move(positions), std::move(attitudes));
}

EstimatorConfig to_estimator_config(const Scenario& s) {
  EstimatorConfig cfg;
  cfg.iota = static_cast<std::size_t>(s.iota - 1);
  cfg.kappa = static_cast<std::size_t>(s.kappa - 1);
  cfg.gains = s.gains;
  cfg.dt = s.sim.dt;
  cfg.t_final = s.sim.t_final;
  cfg.integrator = s.sim.integrator;
  cfg.sample_stride = s.sim.sample_stride;
  return cfg;
}

Scenario builtin_demo(DemoKind which) {
  Scenario s;
  s.angle_unit = AngleUnit::Degrees;
  s.agents = {
      {1, 1.00, 0.05, 10.0},   {2, 0.48, 0.90, 75.0},    {3, -0.52, 0.83, 140.0},
      {4, -1.05, -0.04, -160.0}, {5, -0.47, -0.88, -105.0}, {6, 0.55, -0.85, -40.0},
  };
  // Agent 4 sits opposite agent 1, so the unit length spans the formation.
  s.iota = 1;
  s.kappa = 4;

  // Rigid: every agent measures its ring neighbours at offsets 1, 2, 4, 5.
  std::vector<std::pair<int, int>> ring;
  for (int i = 0; i < 6; ++i) {
    for (int d : {1, 2, 4, 5}) ring.emplace_back(i + 1, (i + d) % 6 + 1);
  }

  if (which == DemoKind::Rigid) {
    s.name = "rigid-demo";
    s.edges = ring;
  } else {
    // Agents 5 and 6 take no measurements and are each seen by a single agent.
    s.name = "roto-flexible-demo";
    for (const auto& e : ring) {
      if (e.first <= 4 && e.second <= 4) s.edges.push_back(e);
    }
    s.edges.emplace_back(4, 5);
    s.edges.emplace_back(1, 6);
  }
  return s;
}

std::optional<DemoKind> parse_demo_kind(std::string_view name) {
  if (name == "rigid") return DemoKind::Rigid;
  if (name == "roto-flexible" || name == "roto_flexible") return DemoKind::RotoFlexible;
  return std::nullopt;
}

std::string_view to_string(DemoKind which) { return which == DemoKind::Rigid ? "rigid" : "roto-flexible"; }

}  // namespace bse2
