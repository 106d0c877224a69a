#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "powersim/core.hpp"
#include "powersim/frames.hpp"

namespace powersim {

enum class LeafReason { expanded, depth_limit, all_dead, empty_distribution, all_pruned };

const char* to_string(LeafReason reason);

/// One frame in the probability tree. The probability of the edge from the
/// parent is stored on the child.
struct ReelNode {
  State state;
  std::size_t depth = 0;
  double edge_probability = 1.0;
  std::vector<std::size_t> path;  ///< child indices from the root
  std::vector<ReelNode> children;
  double dropped_mass = 0.0;  ///< transition mass removed by pruning
  LeafReason reason = LeafReason::expanded;
  DistributionStatus status = DistributionStatus::ok;
  std::size_t lines_retained = 0;

  bool is_leaf() const { return children.empty(); }
};

struct TreeOptions {
  std::size_t depth_max = 2;
  std::size_t branch_k = 4;  ///< 0 keeps every child
  double p_min = 0.02;
  FrameOptions frame;
};

/// Seed of the node at `path` under `master`; the root uses `master` itself.
std::uint64_t node_seed(std::uint64_t master, const std::vector<std::size_t>& path);

/// Expands the tree level by level. Each node's transition distribution is
/// seeded from its path, so the tree does not depend on the thread count.
ReelNode build_reel_tree(const State& root, const TreeOptions& options, const ModelParams& params,
                         const SamplerConfig& cfg);

/// A root-to-leaf path.
struct Reel {
  std::vector<State> states;
  std::vector<double> edges;
  std::vector<std::size_t> path;
  double probability = 1.0;
};

/// Product of the edge probabilities; 1 for a path with no edges.
double reel_probability(const Reel& reel);

/// Every root-to-leaf path, most probable first, ties in path order.
std::vector<Reel> enumerate_reels(const ReelNode& tree);

std::size_t count_nodes(const ReelNode& tree);

}  // namespace powersim
