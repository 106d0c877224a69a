#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "powersim/matrix.hpp"
#include "powersim/params.hpp"

namespace powersim {

using SizeVector = std::vector<double>;

/// Tolerance on each column's absolute sum.
inline constexpr double kColumnSumTolerance = 1e-9;

/// A tactic matrix and the agents' sizes: the complete configuration at a step.
struct State {
  TacticMatrix tactics;
  SizeVector sizes;

  std::size_t agents() const { return sizes.size(); }
  bool operator==(const State&) const = default;
};

struct ValidationResult {
  bool valid = true;
  std::optional<std::size_t> column;  ///< first offending column
  double deviation = 0.0;             ///< |abs-sum - 1| or the out-of-range entry
  std::string message;

  explicit operator bool() const { return valid; }
};

/// Checks entry range [-1, 1] and unit absolute column sums.
/// Throws std::invalid_argument for NaN or infinite entries.
ValidationResult validate_tactic_matrix(const TacticMatrix& tactics,
                                        double tolerance = kColumnSumTolerance);
/// Same, for column lists that may not form a square matrix (throws if not).
ValidationResult validate_tactic_matrix(const std::vector<TacticVector>& columns,
                                        double tolerance = kColumnSumTolerance);

/// Throws std::invalid_argument on mismatched dimensions or negative sizes.
void check_state(const State& state);

MultiplierMatrix build_multiplier_matrix(const TacticMatrix& tactics, const ModelParams& params);

/// One synchronous update (T o M) s; any resulting size <= 0 becomes exactly 0.
SizeVector step_update(const State& state, const ModelParams& params);

/// `steps` successive updates under fixed tactics, clamping after each.
std::vector<SizeVector> evolve(const State& state, const ModelParams& params, std::size_t steps);

/// Divides by the maximum. Throws std::domain_error when nothing is alive.
SizeVector normalize_sizes(const SizeVector& sizes);

bool all_dead(const SizeVector& sizes);

}  // namespace powersim
