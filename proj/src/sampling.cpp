#include "powersim/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace powersim {

void validate_sampler(const SamplerConfig& cfg) {
  if (!(cfg.p_neg >= 0.0 && cfg.p_neg <= 1.0))
    throw std::invalid_argument("p_neg must lie in [0, 1]");
  if (!(cfg.local_mix >= 0.0 && cfg.local_mix <= 1.0))
    throw std::invalid_argument("local_mix must lie in [0, 1]");
  grid_steps(cfg.rounding);
}

int grid_steps(double rounding) {
  if (!(rounding > 0.0 && rounding <= 1.0))
    throw std::invalid_argument("rounding must lie in (0, 1]");
  const double inv = 1.0 / rounding;
  const double steps = std::round(inv);
  if (std::abs(inv - steps) > 1e-9 * steps)
    throw std::invalid_argument("rounding must divide 1 into an integer number of steps");
  return static_cast<int>(steps);
}

TacticVector sample_tactic_vector(std::size_t n, std::size_t self_index, const SamplerConfig& cfg,
                                  Rng& rng) {
  if (n == 0 || self_index >= n) throw std::invalid_argument("sample_tactic_vector: bad index");
  TacticVector v(n);
  if (n == 1) {
    v[0] = 1.0;
    return v;
  }
  double total = 0.0;
  for (double& x : v) {
    x = rng.exponential();
    total += x;
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] /= total;
    const bool may_flip = i != self_index || cfg.allow_negative_diagonal;
    if (may_flip && rng.bernoulli(cfg.p_neg)) v[i] = -v[i];
  }
  return v;
}

namespace {

void renormalize_column(std::span<double> col, std::size_t self_index) {
  double abs_sum = 0.0;
  for (double x : col) abs_sum += std::abs(x);
  if (!(abs_sum > 0.0)) {
    for (double& x : col) x = 0.0;
    col[self_index] = 1.0;
    return;
  }
  for (double& x : col) x /= abs_sum;
}

}  // namespace

TacticMatrix sample_tactic_matrix(const TacticMatrix& previous, const SamplerConfig& cfg,
                                  double sigma, Rng& rng) {
  const std::size_t n = previous.size();
  TacticMatrix out(n);
  if (rng.bernoulli(cfg.local_mix)) {
    const double scale = sigma / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      auto col = out.column(j);
      for (std::size_t i = 0; i < n; ++i) col[i] = previous(i, j) + scale * rng.normal();
      if (!cfg.allow_negative_diagonal) col[j] = std::abs(col[j]);
      renormalize_column(col, j);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) out.set_column(j, sample_tactic_vector(n, j, cfg, rng));
  }
  return out;
}

GridKey grid_key(const TacticMatrix& tactics, double rounding) {
  GridKey key;
  key.steps = grid_steps(rounding);
  key.cells.reserve(tactics.data().size());
  for (double v : tactics.data()) {
    // std::round rounds halfway cases away from zero
    const long cell = std::lround(v * key.steps);
    key.cells.push_back(static_cast<int>(cell));
  }
  return key;
}

TacticMatrix grid_representative(const GridKey& key) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(key.cells.size())));
  if (n * n != key.cells.size()) throw std::invalid_argument("grid key is not square");
  TacticMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    long abs_sum = 0;
    for (std::size_t i = 0; i < n; ++i) abs_sum += std::labs(key.cells[j * n + i]);
    if (abs_sum == 0) {
      out(j, j) = 1.0;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int cell = key.cells[j * n + i];
      out(i, j) = cell == 0 ? 0.0 : static_cast<double>(cell) / static_cast<double>(abs_sum);
    }
  }
  return out;
}

TacticMatrix round_tactic_matrix(const TacticMatrix& tactics, double rounding) {
  return grid_representative(grid_key(tactics, rounding));
}

}  // namespace powersim
