#include "powersim/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "powersim/parallel.hpp"

namespace powersim {

std::size_t CandidateSet::profile_count() const {
  std::size_t total = 1;
  for (const auto& c : per_agent) {
    if (c.empty()) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / c.size())
      return std::numeric_limits<std::size_t>::max();
    total *= c.size();
  }
  return total;
}

TacticMatrix CandidateSet::assemble(std::span<const std::size_t> profile) const {
  const std::size_t n = per_agent.size();
  TacticMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) out.set_column(j, per_agent[j][profile[j]]);
  return out;
}

void check_candidates(const CandidateSet& candidates) {
  const std::size_t n = candidates.agents();
  for (std::size_t j = 0; j < n; ++j) {
    const auto& list = candidates.per_agent[j];
    if (list.empty()) throw std::invalid_argument("agent " + std::to_string(j) + " has no candidates");
    for (const auto& c : list) {
      if (c.size() != n) throw std::invalid_argument("candidate length does not match agent count");
      double abs_sum = 0.0;
      for (double v : c) {
        if (!std::isfinite(v) || v < -1.0 || v > 1.0)
          throw std::invalid_argument("candidate entry outside [-1, 1]");
        abs_sum += std::abs(v);
      }
      if (std::abs(abs_sum - 1.0) > kColumnSumTolerance)
        throw std::invalid_argument("candidate absolute sum differs from 1");
    }
  }
}

CandidateSet sample_candidates(std::size_t agents, std::size_t per_agent,
                               const SamplerConfig& cfg, Rng& rng) {
  if (per_agent == 0) throw std::invalid_argument("need at least one candidate per agent");
  CandidateSet set;
  set.per_agent.resize(agents);
  for (std::size_t j = 0; j < agents; ++j) {
    auto& list = set.per_agent[j];
    list.reserve(per_agent);
    for (std::size_t k = 0; k < per_agent; ++k) list.push_back(sample_tactic_vector(agents, j, cfg, rng));
  }
  return set;
}

bool limit_candidates(CandidateSet& candidates, std::size_t max_profiles) {
  if (candidates.profile_count() <= max_profiles) return false;
  const double n = static_cast<double>(candidates.agents());
  auto keep = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(max_profiles), 1.0 / n)));
  // pow can land just under an exact integer root
  while (std::pow(static_cast<double>(keep + 1), n) <= static_cast<double>(max_profiles)) ++keep;
  keep = std::max<std::size_t>(keep, 1);
  bool dropped = false;
  for (auto& list : candidates.per_agent) {
    if (list.size() > keep) {
      list.resize(keep);
      dropped = true;
    }
  }
  return dropped;
}

UtilityVector profile_utility(const TacticMatrix& tactics, const TacticMatrix& previous,
                              const SizeVector& sizes, const ModelParams& params) {
  const SizeVector next = step_update(State{tactics, sizes}, params);
  return expected_utility(positional_utility(next, params.alpha), tactics, previous, params.sigma);
}

namespace {

double column_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

// Running argmax with the tie rule; candidates must be offered in index order.
struct Argmax {
  std::size_t index = 0;
  double utility = -std::numeric_limits<double>::infinity();
  double distance = std::numeric_limits<double>::infinity();

  void offer(std::size_t i, double u, double d) {
    if (u > utility || (u == utility && d < distance)) {
      index = i;
      utility = u;
      distance = d;
    }
  }
};

// Mixed-radix profile indexing with agent 0 as the fastest digit.
struct ProfileIndex {
  std::vector<std::size_t> radix;
  std::vector<std::size_t> stride;
  std::size_t total = 1;

  explicit ProfileIndex(const CandidateSet& c) {
    for (const auto& list : c.per_agent) {
      radix.push_back(list.size());
      stride.push_back(total);
      total *= list.size();
    }
  }
  void decode(std::size_t index, std::vector<std::size_t>& digits) const {
    digits.resize(radix.size());
    for (std::size_t j = 0; j < radix.size(); ++j) {
      digits[j] = index % radix[j];
      index /= radix[j];
    }
  }
};

// Largest product analyze_stage will tabulate.
constexpr std::size_t kMaxTabulatedProfiles = 50'000'000;

}  // namespace

BestResponse best_response(std::size_t agent, const TacticMatrix& others,
                           std::span<const TacticVector> candidates, const TacticMatrix& previous,
                           const SizeVector& sizes, const ModelParams& params) {
  if (candidates.empty()) throw std::invalid_argument("best_response needs candidates");
  if (agent >= others.size()) throw std::invalid_argument("best_response: agent out of range");
  TacticMatrix trial = others;
  Argmax best;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    trial.set_column(agent, candidates[c]);
    const double u = profile_utility(trial, previous, sizes, params)[agent];
    best.offer(c, u, column_distance(candidates[c], previous.column(agent)));
  }
  return {best.index, best.utility};
}

namespace {

struct ProfileTable {
  ProfileIndex index;
  std::vector<double> utilities;  // profile-major, n per profile
};

ProfileTable tabulate(const CandidateSet& candidates, const TacticMatrix& previous,
                      const SizeVector& sizes, const ModelParams& params, unsigned threads) {
  check_candidates(candidates);
  const std::size_t n = candidates.agents();
  if (previous.size() != n || sizes.size() != n)
    throw std::invalid_argument("stage analysis: dimension mismatch");
  const std::size_t total = candidates.profile_count();
  if (total > kMaxTabulatedProfiles)
    throw std::length_error("candidate product too large to tabulate; limit candidates first");

  ProfileTable t{ProfileIndex(candidates), std::vector<double>(total * n)};
  parallel_for(total, threads, [&](std::size_t p) {
    std::vector<std::size_t> digits;
    t.index.decode(p, digits);
    const UtilityVector u = profile_utility(candidates.assemble(digits), previous, sizes, params);
    std::copy(u.begin(), u.end(), t.utilities.begin() + static_cast<std::ptrdiff_t>(p * n));
  });
  return t;
}

MinimaxVector security_levels(const ProfileTable& t) {
  const std::size_t n = t.index.radix.size();
  MinimaxVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> worst(t.index.radix[i], std::numeric_limits<double>::infinity());
    for (std::size_t p = 0; p < t.index.total; ++p) {
      const std::size_t c = (p / t.index.stride[i]) % t.index.radix[i];
      worst[c] = std::min(worst[c], t.utilities[p * n + i]);
    }
    out[i] = *std::max_element(worst.begin(), worst.end());
  }
  return out;
}

}  // namespace

StageAnalysis analyze_stage(const CandidateSet& candidates, const TacticMatrix& previous,
                            const SizeVector& sizes, const ModelParams& params, unsigned threads) {
  const ProfileTable table = tabulate(candidates, previous, sizes, params, threads);
  const ProfileIndex& index = table.index;
  const std::size_t n = candidates.agents();
  const std::size_t total = index.total;

  std::vector<std::vector<double>> distances(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& c : candidates.per_agent[j])
      distances[j].push_back(column_distance(c, previous.column(j)));
  }

  std::vector<char> is_equilibrium(total, 0);
  parallel_for(total, threads, [&](std::size_t p) {
    std::vector<std::size_t> digits;
    index.decode(p, digits);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t base = p - digits[i] * index.stride[i];
      Argmax best;
      for (std::size_t c = 0; c < index.radix[i]; ++c) {
        best.offer(c, table.utilities[(base + c * index.stride[i]) * n + i], distances[i][c]);
      }
      if (best.index != digits[i]) return;
    }
    is_equilibrium[p] = 1;
  });

  StageAnalysis out;
  out.minimax.assign(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> digits;
  for (std::size_t p = 0; p < total; ++p) {
    if (!is_equilibrium[p]) continue;
    index.decode(p, digits);
    out.equilibrium_profiles.push_back(digits);
    out.equilibria.push_back(candidates.assemble(digits));
    UtilityVector u(table.utilities.begin() + static_cast<std::ptrdiff_t>(p * n),
                    table.utilities.begin() + static_cast<std::ptrdiff_t>((p + 1) * n));
    for (std::size_t i = 0; i < n; ++i) out.minimax[i] = std::min(out.minimax[i], u[i]);
    out.equilibrium_utilities.push_back(std::move(u));
  }

  if (out.equilibria.empty()) {
    out.security_fallback = true;
    out.minimax = security_levels(table);
  }
  return out;
}

std::vector<TacticMatrix> stage_nash_equilibria(const CandidateSet& candidates,
                                                const TacticMatrix& previous,
                                                const SizeVector& sizes,
                                                const ModelParams& params, unsigned threads) {
  return analyze_stage(candidates, previous, sizes, params, threads).equilibria;
}

MinimaxVector minimax_vector(const std::vector<TacticMatrix>& equilibria,
                             const CandidateSet& candidates, const TacticMatrix& previous,
                             const SizeVector& sizes, const ModelParams& params,
                             unsigned threads) {
  if (equilibria.empty()) return security_levels(tabulate(candidates, previous, sizes, params, threads));
  MinimaxVector out(sizes.size(), std::numeric_limits<double>::infinity());
  for (const auto& eq : equilibria) {
    const UtilityVector u = profile_utility(eq, previous, sizes, params);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], u[i]);
  }
  return out;
}

}  // namespace powersim
