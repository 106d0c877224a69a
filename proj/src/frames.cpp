#include "powersim/frames.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "powersim/parallel.hpp"

namespace powersim {

LineOfPlay generate_line(const State& root, std::size_t horizon, const SamplerConfig& cfg,
                         const ModelParams& params, Rng& rng) {
  if (horizon == 0) throw std::invalid_argument("line of play needs a horizon of at least 1");
  LineOfPlay line;
  line.origin = root.tactics;
  line.matrices.reserve(horizon);
  line.sizes.reserve(horizon);
  line.payoffs.reserve(horizon);

  State current = root;
  for (std::size_t t = 0; t < horizon; ++t) {
    TacticMatrix next = sample_tactic_matrix(current.tactics, cfg, params.sigma, rng);
    current.sizes = step_update(State{next, current.sizes}, params);
    line.payoffs.push_back(expected_utility(positional_utility(current.sizes, params.alpha), next,
                                            current.tactics, params.sigma));
    line.sizes.push_back(current.sizes);
    current.tactics = next;
    line.matrices.push_back(std::move(next));
  }
  line.intertemporal = intertemporal_utility(line.payoffs, params.delta);
  line.weight = frame_weight(line, params);
  return line;
}

double discounted_distance(const LineOfPlay& line, double delta) {
  double total = 0.0;
  double discount = 1.0;
  const TacticMatrix* prev = &line.origin;
  for (const auto& m : line.matrices) {
    discount *= delta;
    total += discount * tactical_distance(m, *prev);
    prev = &m;
  }
  return (1.0 - delta) * total;
}

double frame_weight(const LineOfPlay& line, const ModelParams& params) {
  return inertia_probability(discounted_distance(line, params.delta), params.sigma);
}

bool is_rational(const LineOfPlay& line, const MinimaxVector& minimax) {
  if (line.intertemporal.size() != minimax.size())
    throw std::invalid_argument("minimax vector length does not match the line");
  for (std::size_t i = 0; i < minimax.size(); ++i) {
    if (!(line.intertemporal[i] > minimax[i])) return false;
  }
  return true;
}

std::vector<LineOfPlay> folk_filter(const std::vector<LineOfPlay>& lines,
                                    const MinimaxVector& minimax) {
  std::vector<LineOfPlay> kept;
  for (const auto& line : lines) {
    if (is_rational(line, minimax)) kept.push_back(line);
  }
  return kept;
}

const char* to_string(DistributionStatus status) {
  switch (status) {
    case DistributionStatus::ok: return "ok";
    case DistributionStatus::all_lines_irrational: return "all_lines_irrational";
    case DistributionStatus::zero_weight: return "zero_weight";
  }
  return "unknown";
}

std::vector<Frame> cluster_first_moves(std::span<const LineOfPlay> rational, const State& root,
                                       const ModelParams& params, double rounding) {
  struct Accum {
    double weight = 0.0;
    std::size_t support = 0;
  };
  std::map<GridKey, Accum> clusters;
  double total = 0.0;
  for (const auto& line : rational) {
    if (line.matrices.empty()) throw std::invalid_argument("line of play has no moves");
    auto& acc = clusters[grid_key(line.matrices.front(), rounding)];
    acc.weight += line.weight;
    acc.support += 1;
    total += line.weight;
  }
  std::vector<Frame> frames;
  if (!(total > 0.0)) return frames;
  frames.reserve(clusters.size());
  for (const auto& [key, acc] : clusters) {
    Frame f;
    f.key = key;
    f.representative = grid_representative(key);
    f.next_sizes = step_update(State{f.representative, root.sizes}, params);
    f.probability = acc.weight / total;
    f.support = acc.support;
    f.total_weight = acc.weight;
    frames.push_back(std::move(f));
  }
  std::stable_sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& b) {
    return a.total_weight > b.total_weight;
  });
  return frames;
}

std::uint64_t candidate_seed(std::uint64_t seed) { return derive_seed(seed, 0); }

std::uint64_t line_seed(std::uint64_t seed, std::size_t line) {
  return derive_seed(derive_seed(seed, 1), line);
}

FrameDistribution transition_distribution(const State& root, const ModelParams& params,
                                          const SamplerConfig& cfg, const FrameOptions& options) {
  check_state(root);
  validate_params(params);
  validate_sampler(cfg);
  if (auto v = validate_tactic_matrix(root.tactics); !v) throw std::invalid_argument(v.message);
  if (options.lines == 0) throw std::invalid_argument("need at least one line of play");
  if (options.horizon == 0) throw std::invalid_argument("horizon must be at least 1");

  FrameDistribution out;
  auto& diag = out.diagnostics;

  Rng candidate_rng(candidate_seed(cfg.rng_seed));
  CandidateSet candidates = sample_candidates(root.agents(), options.candidates, cfg, candidate_rng);
  diag.candidates_limited = limit_candidates(candidates, options.max_profiles);
  const StageAnalysis stage =
      analyze_stage(candidates, root.tactics, root.sizes, params, options.threads);
  diag.equilibria = stage.equilibria.size();
  diag.security_fallback = stage.security_fallback;
  diag.minimax = stage.minimax;

  std::vector<LineOfPlay> lines(options.lines);
  std::vector<char> rational(options.lines, 0);
  parallel_for(options.lines, options.threads, [&](std::size_t k) {
    Rng rng(line_seed(cfg.rng_seed, k));
    lines[k] = generate_line(root, options.horizon, cfg, params, rng);
    rational[k] = is_rational(lines[k], stage.minimax) ? 1 : 0;
  });
  diag.lines_generated = lines.size();

  std::vector<LineOfPlay> kept;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (rational[k]) kept.push_back(std::move(lines[k]));
  }
  diag.lines_retained = kept.size();
  if (kept.empty()) {
    diag.status = DistributionStatus::all_lines_irrational;
    return out;
  }
  out.frames = cluster_first_moves(kept, root, params, cfg.rounding);
  diag.clusters = out.frames.size();
  if (out.frames.empty()) diag.status = DistributionStatus::zero_weight;
  return out;
}

double total_variation(const FrameDistribution& a, const FrameDistribution& b) {
  std::map<GridKey, double> diff;
  for (const auto& f : a.frames) diff[f.key] += f.probability;
  for (const auto& f : b.frames) diff[f.key] -= f.probability;
  double l1 = 0.0;
  for (const auto& [key, d] : diff) l1 += std::abs(d);
  return 0.5 * l1;
}

}  // namespace powersim
