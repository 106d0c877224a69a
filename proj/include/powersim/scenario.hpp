#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "powersim/core.hpp"
#include "powersim/params.hpp"
#include "powersim/reels.hpp"
#include "powersim/sampling.hpp"

namespace powersim {

inline constexpr std::string_view kScenarioSchema = "powersim.scenario/1";

/// Everything needed to run the engine from a file. Tactics are agent-major:
/// tactics[j] is agent j's outgoing tactic vector (column j of the matrix).
struct Scenario {
  std::vector<std::string> agents;
  SizeVector sizes;
  std::vector<TacticVector> tactics;
  ModelParams params;
  TreeOptions simulation;  ///< frame options live in simulation.frame
  SamplerConfig sampler;   ///< sampler.rng_seed is the master seed

  State state() const;
  bool operator==(const Scenario& other) const;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { malformed, dimension_mismatch, out_of_range, invalid_tactics };

  ScenarioError(Kind kind, std::string field, const std::string& what)
      : std::runtime_error(what), kind_(kind), field_(std::move(field)) {}

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

const char* to_string(ScenarioError::Kind kind);

struct ParsedScenario {
  Scenario scenario;
  std::vector<std::string> warnings;
};

/// Parses a JSON scenario document. Sizes whose maximum is not 1 are
/// normalized and a warning is recorded.
ParsedScenario parse_scenario(std::string_view text);

std::string serialize_scenario(const Scenario& scenario);

}  // namespace powersim
