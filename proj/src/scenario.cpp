#include "powersim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace powersim {

using json = nlohmann::json;
using Kind = ScenarioError::Kind;

State Scenario::state() const { return State{TacticMatrix::from_columns(tactics), sizes}; }

bool Scenario::operator==(const Scenario& o) const {
  const auto& a = simulation;
  const auto& b = o.simulation;
  return agents == o.agents && sizes == o.sizes && tactics == o.tactics && params == o.params &&
         sampler == o.sampler && a.depth_max == b.depth_max && a.branch_k == b.branch_k &&
         a.p_min == b.p_min && a.frame.lines == b.frame.lines &&
         a.frame.horizon == b.frame.horizon && a.frame.candidates == b.frame.candidates &&
         a.frame.max_profiles == b.frame.max_profiles;
}

const char* to_string(ScenarioError::Kind kind) {
  switch (kind) {
    case Kind::malformed: return "malformed";
    case Kind::dimension_mismatch: return "dimension_mismatch";
    case Kind::out_of_range: return "out_of_range";
    case Kind::invalid_tactics: return "invalid_tactics";
  }
  return "unknown";
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) {
    if (!keys.contains(k))
      throw ScenarioError(Kind::malformed, where + k, "unknown field '" + where + k + "'");
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ScenarioError(Kind::malformed, field, "'" + field + "' must be an object");
  return j;
}

double get_real(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ScenarioError(Kind::malformed, where + key, "'" + where + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    throw ScenarioError(Kind::out_of_range, where + key, "'" + where + key + "' must be finite");
  return d;
}

std::uint64_t get_count(const json& obj, const std::string& where, const char* key,
                        std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
    throw ScenarioError(Kind::out_of_range, where + key, "'" + where + key + "' must be >= 0");
  if (!v.is_number_unsigned())
    throw ScenarioError(Kind::malformed, where + key,
                        "'" + where + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> get_reals(const json& v, const std::string& field) {
  if (!v.is_array()) throw ScenarioError(Kind::malformed, field, "'" + field + "' must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_number()) throw ScenarioError(Kind::malformed, f, "'" + f + "' must be a number");
    out.push_back(v[i].get<double>());
    if (!std::isfinite(out.back()))
      throw ScenarioError(Kind::out_of_range, f, "'" + f + "' must be finite");
  }
  return out;
}

void parse_params(const json& j, ModelParams& p) {
  require_object(j, "params");
  reject_unknown_keys(j, "params.", {"alpha", "beta", "mu", "delta", "sigma"});
  p.alpha = get_real(j, "params.", "alpha", p.alpha);
  p.beta = get_real(j, "params.", "beta", p.beta);
  p.mu = get_real(j, "params.", "mu", p.mu);
  p.delta = get_real(j, "params.", "delta", p.delta);
  p.sigma = get_real(j, "params.", "sigma", p.sigma);
  try {
    validate_params(p);
  } catch (const ParameterError& e) {
    throw ScenarioError(Kind::out_of_range, "params." + e.field(), e.what());
  }
}

void parse_simulation(const json& j, TreeOptions& t, SamplerConfig& s) {
  require_object(j, "simulation");
  reject_unknown_keys(j, "simulation.",
                      {"lines", "horizon", "depth", "branch", "min_probability", "seed",
                       "candidates", "max_profiles", "sampler"});
  const std::string w = "simulation.";
  t.frame.lines = get_count(j, w, "lines", t.frame.lines);
  t.frame.horizon = get_count(j, w, "horizon", t.frame.horizon);
  t.depth_max = get_count(j, w, "depth", t.depth_max);
  t.branch_k = get_count(j, w, "branch", t.branch_k);
  t.p_min = get_real(j, w, "min_probability", t.p_min);
  s.rng_seed = get_count(j, w, "seed", s.rng_seed);
  t.frame.candidates = get_count(j, w, "candidates", t.frame.candidates);
  t.frame.max_profiles = get_count(j, w, "max_profiles", t.frame.max_profiles);

  if (t.frame.lines == 0)
    throw ScenarioError(Kind::out_of_range, w + "lines", "number of lines must be at least 1");
  if (t.frame.horizon == 0)
    throw ScenarioError(Kind::out_of_range, w + "horizon", "horizon must be at least 1");
  if (t.frame.candidates == 0)
    throw ScenarioError(Kind::out_of_range, w + "candidates", "need at least one candidate per agent");
  if (t.frame.max_profiles == 0)
    throw ScenarioError(Kind::out_of_range, w + "max_profiles", "profile budget must be at least 1");
  if (!(t.p_min >= 0.0 && t.p_min <= 1.0))
    throw ScenarioError(Kind::out_of_range, w + "min_probability",
                        "minimum probability must lie in [0, 1]");

  if (!j.contains("sampler")) return;
  const json& sj = require_object(j.at("sampler"), w + "sampler");
  const std::string sw = w + "sampler.";
  reject_unknown_keys(sj, sw, {"p_neg", "allow_negative_diagonal", "local_mix", "rounding"});
  s.p_neg = get_real(sj, sw, "p_neg", s.p_neg);
  s.local_mix = get_real(sj, sw, "local_mix", s.local_mix);
  s.rounding = get_real(sj, sw, "rounding", s.rounding);
  if (sj.contains("allow_negative_diagonal")) {
    const json& v = sj.at("allow_negative_diagonal");
    if (!v.is_boolean())
      throw ScenarioError(Kind::malformed, sw + "allow_negative_diagonal",
                          "'" + sw + "allow_negative_diagonal' must be a boolean");
    s.allow_negative_diagonal = v.get<bool>();
  }
  try {
    validate_sampler(s);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(Kind::out_of_range, sw.substr(0, sw.size() - 1), e.what());
  }
}

}  // namespace

ParsedScenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(Kind::malformed, "", std::string("invalid JSON: ") + e.what());
  }
  require_object(doc, "<root>");
  reject_unknown_keys(doc, "", {"schema", "agents", "sizes", "tactics", "params", "simulation"});

  if (!doc.contains("schema") || !doc["schema"].is_string())
    throw ScenarioError(Kind::malformed, "schema", "missing 'schema' string");
  if (doc["schema"].get<std::string>() != kScenarioSchema)
    throw ScenarioError(Kind::malformed, "schema",
                        "unsupported schema '" + doc["schema"].get<std::string>() +
                            "', expected '" + std::string(kScenarioSchema) + "'");

  ParsedScenario out;
  Scenario& sc = out.scenario;

  if (!doc.contains("sizes")) throw ScenarioError(Kind::malformed, "sizes", "missing 'sizes'");
  sc.sizes = get_reals(doc["sizes"], "sizes");
  const std::size_t n = sc.sizes.size();
  if (n == 0) throw ScenarioError(Kind::dimension_mismatch, "sizes", "scenario has no agents");
  for (std::size_t i = 0; i < n; ++i) {
    if (sc.sizes[i] < 0.0)
      throw ScenarioError(Kind::out_of_range, "sizes[" + std::to_string(i) + "]",
                          "sizes must be non-negative");
  }

  if (doc.contains("agents")) {
    const json& a = doc["agents"];
    if (!a.is_array()) throw ScenarioError(Kind::malformed, "agents", "'agents' must be an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string())
        throw ScenarioError(Kind::malformed, "agents[" + std::to_string(i) + "]",
                            "agent names must be strings");
      sc.agents.push_back(a[i].get<std::string>());
    }
    if (sc.agents.size() != n)
      throw ScenarioError(Kind::dimension_mismatch, "agents",
                          std::to_string(sc.agents.size()) + " agent names for " +
                              std::to_string(n) + " sizes");
  } else {
    for (std::size_t i = 0; i < n; ++i) sc.agents.push_back("agent" + std::to_string(i + 1));
  }

  if (!doc.contains("tactics")) throw ScenarioError(Kind::malformed, "tactics", "missing 'tactics'");
  const json& tj = doc["tactics"];
  if (!tj.is_array()) throw ScenarioError(Kind::malformed, "tactics", "'tactics' must be an array");
  if (tj.size() != n)
    throw ScenarioError(Kind::dimension_mismatch, "tactics",
                        std::to_string(tj.size()) + " tactic vectors for " + std::to_string(n) +
                            " agents");
  for (std::size_t j = 0; j < n; ++j) {
    const std::string f = "tactics[" + std::to_string(j) + "]";
    sc.tactics.push_back(get_reals(tj[j], f));
    if (sc.tactics.back().size() != n)
      throw ScenarioError(Kind::dimension_mismatch, f,
                          "'" + f + "' has " + std::to_string(sc.tactics.back().size()) +
                              " entries, expected " + std::to_string(n));
  }
  if (auto v = validate_tactic_matrix(sc.tactics); !v) {
    throw ScenarioError(Kind::invalid_tactics, "tactics[" + std::to_string(*v.column) + "]",
                        "invalid tactics for agent '" + sc.agents[*v.column] + "': " + v.message);
  }

  if (doc.contains("params")) parse_params(doc["params"], sc.params);
  else validate_params(sc.params);
  if (doc.contains("simulation")) parse_simulation(doc["simulation"], sc.simulation, sc.sampler);

  const double max = *std::max_element(sc.sizes.begin(), sc.sizes.end());
  if (!(max > 0.0)) throw ScenarioError(Kind::out_of_range, "sizes", "every agent is dead");
  if (max != 1.0) {
    sc.sizes = normalize_sizes(sc.sizes);
    out.warnings.push_back("sizes normalized so the largest agent has size 1 (divided by " +
                           json(max).dump() + ")");
  }
  return out;
}

std::string serialize_scenario(const Scenario& sc) {
  nlohmann::ordered_json doc;
  doc["schema"] = kScenarioSchema;
  doc["agents"] = sc.agents;
  doc["sizes"] = sc.sizes;
  doc["tactics"] = sc.tactics;
  doc["params"] = {{"alpha", sc.params.alpha},
                   {"beta", sc.params.beta},
                   {"mu", sc.params.mu},
                   {"delta", sc.params.delta},
                   {"sigma", sc.params.sigma}};
  const auto& t = sc.simulation;
  doc["simulation"] = {{"lines", t.frame.lines},
                       {"horizon", t.frame.horizon},
                       {"depth", t.depth_max},
                       {"branch", t.branch_k},
                       {"min_probability", t.p_min},
                       {"seed", sc.sampler.rng_seed},
                       {"candidates", t.frame.candidates},
                       {"max_profiles", t.frame.max_profiles},
                       {"sampler",
                        {{"p_neg", sc.sampler.p_neg},
                         {"allow_negative_diagonal", sc.sampler.allow_negative_diagonal},
                         {"local_mix", sc.sampler.local_mix},
                         {"rounding", sc.sampler.rounding}}}};
  return doc.dump(2) + "\n";
}

}  // namespace powersim
