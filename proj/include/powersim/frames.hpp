#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "powersim/core.hpp"
#include "powersim/equilibrium.hpp"
#include "powersim/sampling.hpp"
#include "powersim/utility.hpp"

namespace powersim {

/// A sampled sequence of tactic matrices played forward from a root state.
struct LineOfPlay {
  TacticMatrix origin;                ///< T_0, the root's tactics
  std::vector<TacticMatrix> matrices;  ///< T_1..T_H
  std::vector<SizeVector> sizes;       ///< s_1..s_H
  std::vector<UtilityVector> payoffs;  ///< p(1)..p(H)
  UtilityVector intertemporal;         ///< P
  double weight = 1.0;
};

struct FrameOptions {
  std::size_t lines = 1000;         ///< N
  std::size_t horizon = 5;          ///< H
  std::size_t candidates = 30;      ///< per agent, for the stage game
  std::size_t max_profiles = 20000; ///< candidate product budget
  unsigned threads = 1;
};

/// Plays H sampled matrices from `root` and fills in every derived field.
LineOfPlay generate_line(const State& root, std::size_t horizon, const SamplerConfig& cfg,
                         const ModelParams& params, Rng& rng);

/// (1 - delta) * sum_t delta^t ||T_t - T_{t-1}||_F over the line.
double discounted_distance(const LineOfPlay& line, double delta);

/// q of the discounted distance.
double frame_weight(const LineOfPlay& line, const ModelParams& params);

/// Strict P_i > minimax_i for every agent.
bool is_rational(const LineOfPlay& line, const MinimaxVector& minimax);

std::vector<LineOfPlay> folk_filter(const std::vector<LineOfPlay>& lines,
                                    const MinimaxVector& minimax);

/// One candidate next frame.
struct Frame {
  GridKey key;
  TacticMatrix representative;
  SizeVector next_sizes;  ///< step_update(representative, root sizes)
  double probability = 0.0;
  std::size_t support = 0;
  double total_weight = 0.0;
};

enum class DistributionStatus { ok, all_lines_irrational, zero_weight };

const char* to_string(DistributionStatus status);

struct FrameDiagnostics {
  std::size_t lines_generated = 0;
  std::size_t lines_retained = 0;
  std::size_t clusters = 0;
  std::size_t equilibria = 0;
  bool security_fallback = false;
  bool candidates_limited = false;
  MinimaxVector minimax;
  DistributionStatus status = DistributionStatus::ok;
};

struct FrameDistribution {
  std::vector<Frame> frames;  ///< heaviest first, then by grid key
  FrameDiagnostics diagnostics;

  bool empty() const { return frames.empty(); }
};

/// Groups lines by the grid key of their first move. Probability of a cluster is
/// its share of the total weight.
std::vector<Frame> cluster_first_moves(std::span<const LineOfPlay> rational, const State& root,
                                       const ModelParams& params, double rounding);

/// The full lower-level procedure: candidates, stage equilibria and minimax,
/// N lines, folk filter, weights, clustering.
FrameDistribution transition_distribution(const State& root, const ModelParams& params,
                                          const SamplerConfig& cfg, const FrameOptions& options);

/// Seeds for the candidate stream and for line k of a run seeded with `seed`.
std::uint64_t candidate_seed(std::uint64_t seed);
std::uint64_t line_seed(std::uint64_t seed, std::size_t line);

/// Half the L1 distance between two distributions matched on grid key.
double total_variation(const FrameDistribution& a, const FrameDistribution& b);

}  // namespace powersim
