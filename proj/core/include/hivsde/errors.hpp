#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hivsde {

/// Raised when a parameter, state or configuration breaks one of its invariants.
/// `field()` names the offending key (e.g. "epsilon").
class ValidationError : public std::invalid_argument {
  public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Malformed input text (scenario files, CSV series). `line()` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, std::string key, const std::string& what)
        : std::runtime_error(what), line_(line), key_(std::move(key)) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

  private:
    std::size_t line_;
    std::string key_;
};

/// The stochastic index bracket k1 k2 (k4 + s3^2/2) - ... is not positive.
class NonpositiveDenominator : public std::domain_error {
  public:
    explicit NonpositiveDenominator(double bracket);
    double bracket() const noexcept { return bracket_; }

  private:
    double bracket_;
};

/// A state component became non-finite. The trajectory is discarded.
class StepOverflow : public std::runtime_error {
  public:
    StepOverflow(std::size_t step, std::size_t path = 0);
    std::size_t step() const noexcept { return step_; }
    std::size_t path() const noexcept { return path_; }

  private:
    std::size_t step_;
    std::size_t path_;
};

class ThresholdBelowFloor : public std::invalid_argument {
  public:
    ThresholdBelowFloor(double threshold, double floor);
};

class NonpositiveMass : public std::domain_error {
  public:
    explicit NonpositiveMass(double mass);
};

}  // namespace hivsde
