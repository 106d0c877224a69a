#include "powersim/params.hpp"

#include <cmath>

namespace powersim {

void validate_params(const ModelParams& p) {
  auto finite = [](const char* name, double v) {
    if (!std::isfinite(v)) throw ParameterError(name, std::string(name) + " must be finite");
  };
  finite("alpha", p.alpha);
  finite("beta", p.beta);
  finite("mu", p.mu);
  finite("delta", p.delta);
  finite("sigma", p.sigma);

  if (!(p.alpha >= 2.0 && p.alpha <= 3.0))
    throw ParameterError("alpha", "utility exponent must lie in [2, 3]");
  if (!(p.beta > 1.0)) throw ParameterError("beta", "benevolence multiplier must exceed 1");
  if (!(p.mu > p.beta))
    throw ParameterError("mu", "malevolence multiplier must exceed the benevolence multiplier");
  if (!(p.delta > 0.0 && p.delta < 1.0))
    throw ParameterError("delta", "discount factor must lie in (0, 1)");
  if (!(p.sigma > 0.0)) throw ParameterError("sigma", "social inertia coefficient must be positive");
}

}  // namespace powersim
