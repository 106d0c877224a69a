#pragma once

#include <stdexcept>
#include <string>

namespace powersim {

/// The five model parameters shared by every agent.
struct ModelParams {
  double alpha = 2.5;  ///< positional utility exponent, [2, 3]
  double beta = 1.2;   ///< benevolence multiplier, > 1
  double mu = 3.0;     ///< malevolence multiplier, > beta
  double delta = 0.9;  ///< discount factor, (0, 1)
  double sigma = 0.1;  ///< social inertia coefficient, > 0

  bool operator==(const ModelParams&) const = default;
};

class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Throws ParameterError naming the first parameter outside its range.
void validate_params(const ModelParams& params);

}  // namespace powersim
