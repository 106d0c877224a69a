#include "powersim/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace powersim {

ValidationResult validate_tactic_matrix(const TacticMatrix& tactics, double tolerance) {
  const std::size_t n = tactics.size();
  for (double v : tactics.data()) {
    if (!std::isfinite(v)) throw std::invalid_argument("tactic matrix has a non-finite entry");
  }
  for (std::size_t j = 0; j < n; ++j) {
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = tactics(i, j);
      if (v < -1.0 || v > 1.0) {
        return {false, j, v,
                "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") lies outside [-1, 1]"};
      }
      abs_sum += std::abs(v);
    }
    const double dev = std::abs(abs_sum - 1.0);
    if (dev > tolerance) {
      return {false, j, dev,
              "column " + std::to_string(j) + " absolute sum is " + std::to_string(abs_sum) +
                  ", expected 1"};
    }
  }
  return {};
}

ValidationResult validate_tactic_matrix(const std::vector<TacticVector>& columns,
                                        double tolerance) {
  return validate_tactic_matrix(TacticMatrix::from_columns(columns), tolerance);
}

void check_state(const State& state) {
  if (state.tactics.size() != state.sizes.size()) {
    throw std::invalid_argument("state dimension mismatch: " +
                                std::to_string(state.tactics.size()) + "x" +
                                std::to_string(state.tactics.size()) + " tactics with " +
                                std::to_string(state.sizes.size()) + " sizes");
  }
  for (double s : state.sizes) {
    if (!std::isfinite(s) || s < 0.0) throw std::invalid_argument("sizes must be finite and >= 0");
  }
}

MultiplierMatrix build_multiplier_matrix(const TacticMatrix& tactics, const ModelParams& params) {
  const std::size_t n = tactics.size();
  MultiplierMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) {
        m(i, j) = 1.0;
      } else {
        m(i, j) = tactics(i, j) >= 0.0 ? params.beta : params.mu;
      }
    }
  }
  return m;
}

SizeVector step_update(const State& state, const ModelParams& params) {
  if (state.tactics.size() != state.sizes.size()) check_state(state);
  const std::size_t n = state.sizes.size();
  const TacticMatrix& t = state.tactics;
  SizeVector next(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double tau = t(i, j);
      const double mult = i == j ? 1.0 : (tau >= 0.0 ? params.beta : params.mu);
      acc += tau * mult * state.sizes[j];
    }
    next[i] = acc > 0.0 ? acc : 0.0;
  }
  return next;
}

std::vector<SizeVector> evolve(const State& state, const ModelParams& params, std::size_t steps) {
  check_state(state);
  std::vector<SizeVector> out;
  out.reserve(steps);
  State current = state;
  for (std::size_t t = 0; t < steps; ++t) {
    current.sizes = step_update(current, params);
    out.push_back(current.sizes);
  }
  return out;
}

SizeVector normalize_sizes(const SizeVector& sizes) {
  if (sizes.empty()) throw std::domain_error("cannot normalize an empty size vector");
  const double max = *std::max_element(sizes.begin(), sizes.end());
  if (!(max > 0.0)) throw std::domain_error("cannot normalize sizes: every agent is dead");
  SizeVector out(sizes.size());
  std::transform(sizes.begin(), sizes.end(), out.begin(), [max](double s) { return s / max; });
  return out;
}

bool all_dead(const SizeVector& sizes) {
  return std::all_of(sizes.begin(), sizes.end(), [](double s) { return s <= 0.0; });
}

}  // namespace powersim
