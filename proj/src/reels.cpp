#include "powersim/reels.hpp"

#include <algorithm>
#include <functional>

#include "powersim/parallel.hpp"

namespace powersim {

const char* to_string(LeafReason reason) {
  switch (reason) {
    case LeafReason::expanded: return "expanded";
    case LeafReason::depth_limit: return "depth_limit";
    case LeafReason::all_dead: return "all_dead";
    case LeafReason::empty_distribution: return "empty_distribution";
    case LeafReason::all_pruned: return "all_pruned";
  }
  return "unknown";
}

std::uint64_t node_seed(std::uint64_t master, const std::vector<std::size_t>& path) {
  std::uint64_t seed = master;
  for (std::size_t index : path) seed = derive_seed(seed, index + 1);
  return seed;
}

namespace {

void expand(ReelNode& node, const TreeOptions& options, const ModelParams& params,
            const SamplerConfig& cfg, unsigned threads) {
  if (node.depth >= options.depth_max) {
    node.reason = LeafReason::depth_limit;
    return;
  }
  if (all_dead(node.state.sizes)) {
    node.reason = LeafReason::all_dead;
    return;
  }
  SamplerConfig node_cfg = cfg;
  node_cfg.rng_seed = node_seed(cfg.rng_seed, node.path);
  FrameOptions frame_options = options.frame;
  frame_options.threads = threads;
  const FrameDistribution dist =
      transition_distribution(node.state, params, node_cfg, frame_options);
  node.status = dist.diagnostics.status;
  node.lines_retained = dist.diagnostics.lines_retained;
  if (dist.empty()) {
    node.reason = LeafReason::empty_distribution;
    return;
  }
  double dropped = 0.0;
  for (const Frame& f : dist.frames) {
    const bool room = options.branch_k == 0 || node.children.size() < options.branch_k;
    if (!room || f.probability < options.p_min) {
      dropped += f.probability;
      continue;
    }
    ReelNode child;
    child.state = State{f.representative, f.next_sizes};
    child.depth = node.depth + 1;
    child.edge_probability = f.probability;
    child.path = node.path;
    child.path.push_back(node.children.size());
    node.children.push_back(std::move(child));
  }
  node.dropped_mass = dropped;
  node.reason = node.children.empty() ? LeafReason::all_pruned : LeafReason::expanded;
}

}  // namespace

ReelNode build_reel_tree(const State& root, const TreeOptions& options, const ModelParams& params,
                         const SamplerConfig& cfg) {
  check_state(root);
  ReelNode tree;
  tree.state = root;

  const unsigned threads = std::max(1u, options.frame.threads);
  std::vector<ReelNode*> frontier{&tree};
  while (!frontier.empty()) {
    // Wide frontiers parallelize across nodes, narrow ones inside each node.
    const unsigned inner = frontier.size() >= threads ? 1u : threads;
    const unsigned outer = frontier.size() >= threads ? threads : 1u;
    parallel_for(frontier.size(), outer,
                 [&](std::size_t i) { expand(*frontier[i], options, params, cfg, inner); });
    std::vector<ReelNode*> next;
    for (ReelNode* node : frontier) {
      for (ReelNode& child : node->children) next.push_back(&child);
    }
    frontier = std::move(next);
  }
  return tree;
}

double reel_probability(const Reel& reel) {
  double p = 1.0;
  for (double e : reel.edges) p *= e;
  return p;
}

std::vector<Reel> enumerate_reels(const ReelNode& tree) {
  std::vector<Reel> reels;
  Reel current;
  std::function<void(const ReelNode&)> walk = [&](const ReelNode& node) {
    current.states.push_back(node.state);
    if (node.is_leaf()) {
      Reel r = current;
      r.path = node.path;
      r.probability = reel_probability(r);
      reels.push_back(std::move(r));
    }
    for (const ReelNode& child : node.children) {
      current.edges.push_back(child.edge_probability);
      walk(child);
      current.edges.pop_back();
    }
    current.states.pop_back();
  };
  walk(tree);
  std::stable_sort(reels.begin(), reels.end(),
                   [](const Reel& a, const Reel& b) { return a.probability > b.probability; });
  return reels;
}

std::size_t count_nodes(const ReelNode& tree) {
  std::size_t total = 1;
  for (const auto& c : tree.children) total += count_nodes(c);
  return total;
}

}  // namespace powersim
