#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "powersim/core.hpp"
#include "powersim/sampling.hpp"
#include "powersim/utility.hpp"

namespace powersim {

/// Candidate tactic vectors for each agent (per_agent[j] are columns for agent j).
struct CandidateSet {
  std::vector<std::vector<TacticVector>> per_agent;

  std::size_t agents() const { return per_agent.size(); }
  /// Size of the candidate product; saturates at SIZE_MAX.
  std::size_t profile_count() const;
  /// Matrix whose column j is per_agent[j][profile[j]].
  TacticMatrix assemble(std::span<const std::size_t> profile) const;
};

/// Throws std::invalid_argument if an agent has no candidates or a candidate
/// violates the tactic constraints.
void check_candidates(const CandidateSet& candidates);

/// `per_agent` independent draws of sample_tactic_vector for every agent.
CandidateSet sample_candidates(std::size_t agents, std::size_t per_agent,
                               const SamplerConfig& cfg, Rng& rng);

/// Keeps the leading floor(max_profiles^(1/n)) candidates of every agent when
/// the full product exceeds `max_profiles`. Returns true if anything was dropped.
bool limit_candidates(CandidateSet& candidates, std::size_t max_profiles);

using MinimaxVector = std::vector<double>;

/// Expected utility of every agent if `tactics` is played from sizes `sizes`
/// after `previous`.
UtilityVector profile_utility(const TacticMatrix& tactics, const TacticMatrix& previous,
                              const SizeVector& sizes, const ModelParams& params);

struct BestResponse {
  std::size_t index = 0;
  double utility = 0.0;
};

/// Argmax of `agent`'s expected utility over candidates substituted into column
/// `agent` of `others`. Ties go to the candidate nearest previous's column, then
/// to the lowest index.
BestResponse best_response(std::size_t agent, const TacticMatrix& others,
                           std::span<const TacticVector> candidates, const TacticMatrix& previous,
                           const SizeVector& sizes, const ModelParams& params);

struct StageAnalysis {
  std::vector<std::vector<std::size_t>> equilibrium_profiles;
  std::vector<TacticMatrix> equilibria;
  std::vector<UtilityVector> equilibrium_utilities;
  MinimaxVector minimax;
  bool security_fallback = false;  ///< no equilibrium; minimax is the max-min level
};

/// Tabulates every candidate profile once and derives the pure stage Nash
/// equilibria and the minimax vector from the table.
StageAnalysis analyze_stage(const CandidateSet& candidates, const TacticMatrix& previous,
                            const SizeVector& sizes, const ModelParams& params,
                            unsigned threads = 1);

std::vector<TacticMatrix> stage_nash_equilibria(const CandidateSet& candidates,
                                                const TacticMatrix& previous,
                                                const SizeVector& sizes,
                                                const ModelParams& params, unsigned threads = 1);

/// Per-agent minimum over `equilibria`; with none, each agent's security
/// level max_c min_others over the candidate product.
MinimaxVector minimax_vector(const std::vector<TacticMatrix>& equilibria,
                             const CandidateSet& candidates, const TacticMatrix& previous,
                             const SizeVector& sizes, const ModelParams& params,
                             unsigned threads = 1);

}  // namespace powersim
