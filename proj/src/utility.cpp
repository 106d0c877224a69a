#include "powersim/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace powersim {

UtilityVector positional_utility(const SizeVector& sizes, double alpha) {
  double denom = 0.0;
  for (double s : sizes) denom += s * s;
  UtilityVector u(sizes.size(), 0.0);
  if (!(denom > 0.0)) return u;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > 0.0) u[i] = std::pow(sizes[i], alpha) / denom;
  }
  return u;
}

double tactical_distance(const TacticMatrix& a, const TacticMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tactical distance: dimension mismatch");
  double acc = 0.0;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    const double d = da[k] - db[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double inertia_probability(double distance, double sigma) {
  if (!(distance >= 0.0)) throw std::invalid_argument("tactical distance must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return std::erfc(distance / (sigma * std::sqrt(2.0)));
}

UtilityVector expected_utility(const UtilityVector& utility, const TacticMatrix& current,
                               const TacticMatrix& previous, double sigma) {
  const double q = inertia_probability(tactical_distance(current, previous), sigma);
  UtilityVector p(utility.size());
  for (std::size_t i = 0; i < utility.size(); ++i) p[i] = utility[i] * q;
  return p;
}

UtilityVector intertemporal_utility(const std::vector<UtilityVector>& payoffs, double delta) {
  if (payoffs.empty()) throw std::invalid_argument("intertemporal utility needs at least one step");
  const std::size_t n = payoffs.front().size();
  UtilityVector total(n, 0.0);
  double discount = 1.0;
  for (const auto& p : payoffs) {
    if (p.size() != n) throw std::invalid_argument("payoff vectors differ in length");
    discount *= delta;
    for (std::size_t i = 0; i < n; ++i) total[i] += discount * p[i];
  }
  for (double& v : total) v *= (1.0 - delta);
  return total;
}

double truncation_tail_bound(double delta, std::size_t horizon, double max_payoff) {
  return std::pow(delta, static_cast<double>(horizon + 1)) * max_payoff;
}

std::size_t horizon_for_tolerance(double delta, double max_payoff, double tolerance) {
  std::size_t h = 1;
  while (truncation_tail_bound(delta, h, max_payoff) >= tolerance && h < 100000) ++h;
  return h;
}

}  // namespace powersim
