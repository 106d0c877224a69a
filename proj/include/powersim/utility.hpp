#pragma once

#include <cstddef>
#include <vector>

#include "powersim/core.hpp"

namespace powersim {

using UtilityVector = std::vector<double>;

/// u_i = s_i^alpha / sum_j s_j^2. All-dead populations get all zeros.
UtilityVector positional_utility(const SizeVector& sizes, double alpha);

/// Frobenius norm of (a - b). Throws std::invalid_argument on size mismatch.
double tactical_distance(const TacticMatrix& a, const TacticMatrix& b);

/// Half-normal tail erfc(x / (sigma sqrt 2)): the likelihood of traversing a
/// tactical distance x under social inertia sigma.
double inertia_probability(double distance, double sigma);

/// Positional utility scaled by the probability of moving from `previous` to `current`.
UtilityVector expected_utility(const UtilityVector& utility, const TacticMatrix& current,
                               const TacticMatrix& previous, double sigma);

/// (1 - delta) * sum_{t=1..H} delta^t p(t), where payoffs[0] is p(1).
UtilityVector intertemporal_utility(const std::vector<UtilityVector>& payoffs, double delta);

/// Upper bound on the discounted mass dropped by truncating at `horizon`
/// when every omitted payoff is at most `max_payoff`.
double truncation_tail_bound(double delta, std::size_t horizon, double max_payoff);

/// Smallest horizon whose tail bound is below `tolerance`.
std::size_t horizon_for_tolerance(double delta, double max_payoff, double tolerance);

}  // namespace powersim
