#pragma once

#include <stdexcept>
#include <string>

namespace ipep {

// A user-supplied value is out of range or shapes do not match.
class InvalidParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The stepsize sequence hits A_k = alpha_k^2 somewhere: the error
// amplification coefficients are unbounded (u = infinity is the only
// feasible dual solution) and no finite bound or certificate exists.
class DegenerateStepsizeError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// NaN or Inf appeared while iterating.
class NumericalFailureError : public std::runtime_error {
public:
  NumericalFailureError(const std::string& what, int iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

private:
  int iteration_;
};

}  // namespace ipep
