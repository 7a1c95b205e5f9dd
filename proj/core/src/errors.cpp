#include "hivsde/errors.hpp"

#include <fmt/format.h>

namespace hivsde {

NonpositiveDenominator::NonpositiveDenominator(double bracket)
    : std::domain_error(fmt::format(
          "stochastic index undefined: denominator bracket k1*k2*(k4+s3^2/2) - (k1+s5^2/2)*rho*eta - "
          "(k2+s4^2/2)*gamma*nu = {} is not positive",
          bracket)),
      bracket_(bracket) {}

StepOverflow::StepOverflow(std::size_t step, std::size_t path)
    : std::runtime_error(fmt::format("non-finite state at step {} of path {}", step, path)),
      step_(step),
      path_(path) {}

ThresholdBelowFloor::ThresholdBelowFloor(double threshold, double floor)
    : std::invalid_argument(fmt::format(
          "extinction threshold {} does not exceed the positivity floor 3*dt = {}", threshold, floor)) {}

NonpositiveMass::NonpositiveMass(double mass)
    : std::domain_error(fmt::format("I + C + A = {} is not positive; log rate undefined", mass)) {}

}  // namespace hivsde
