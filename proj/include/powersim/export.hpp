#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "powersim/core.hpp"
#include "powersim/frames.hpp"
#include "powersim/reels.hpp"

namespace powersim {

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

/// Graphviz digraph of a state: node width tracks power, green edges are
/// benevolent and red malevolent, pen width tracks |tau_ij| * s_j. Self
/// allocations appear in the node label instead of as loops.
std::string export_state_dot(const State& state, const std::vector<std::string>& names = {});

/// Graphviz digraph of a reel tree with edge probabilities to 3 decimals.
std::string export_tree_dot(const ReelNode& tree);

/// Header of agent names, then one row per size vector.
std::string export_sizes_csv(const std::vector<SizeVector>& frames,
                             const std::vector<std::string>& names);

/// Agent-major tactic vectors, matching the scenario file convention.
nlohmann::ordered_json tactics_json(const TacticMatrix& tactics);

nlohmann::ordered_json frame_distribution_json(const FrameDistribution& dist);
nlohmann::ordered_json reel_tree_json(const ReelNode& tree);
nlohmann::ordered_json reel_table_json(const std::vector<Reel>& reels);

}  // namespace powersim
