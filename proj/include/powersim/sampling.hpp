#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "powersim/core.hpp"
#include "powersim/rng.hpp"

namespace powersim {

struct SamplerConfig {
  double p_neg = 0.5;  ///< chance an off-diagonal allocation is malevolent
  bool allow_negative_diagonal = false;
  double local_mix = 0.5;  ///< share of draws that perturb the previous matrix
  std::uint64_t rng_seed = 1;
  double rounding = 0.1;  ///< cluster grid step; 1/rounding must be an integer

  bool operator==(const SamplerConfig&) const = default;
};

/// Throws std::invalid_argument on out-of-range fields or a non-integral 1/rounding.
void validate_sampler(const SamplerConfig& cfg);

/// Number of grid steps per unit, round(1/rounding).
int grid_steps(double rounding);

/// Uniform-on-simplex magnitudes with Bernoulli signs.
TacticVector sample_tactic_vector(std::size_t n, std::size_t self_index, const SamplerConfig& cfg,
                                  Rng& rng);

/// With probability local_mix, `previous` plus N(0, (sigma/n)^2) noise per
/// entry, renormalized per column; otherwise a fresh global draw.
TacticMatrix sample_tactic_matrix(const TacticMatrix& previous, const SamplerConfig& cfg,
                                  double sigma, Rng& rng);

/// Integer grid coordinates of a rounded matrix; exact cluster identity.
struct GridKey {
  int steps = 10;
  std::vector<int> cells;  ///< column-major, entry = cell / steps

  auto operator<=>(const GridKey&) const = default;
};

GridKey grid_key(const TacticMatrix& tactics, double rounding);

/// Valid matrix represented by a grid key: columns renormalized by their
/// absolute sums, and an all-zero column replaced by pure self-allocation.
TacticMatrix grid_representative(const GridKey& key);

/// Rounds each entry to the nearest multiple of `rounding` (ties away from zero)
/// and restores unit absolute column sums.
TacticMatrix round_tactic_matrix(const TacticMatrix& tactics, double rounding);

}  // namespace powersim
