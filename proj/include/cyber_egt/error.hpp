#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyber_egt {

// A parameter constraint was violated; constraint() holds the inequality text, e.g. "c_a < w".
class ConstraintViolation : public std::invalid_argument {
public:
  explicit ConstraintViolation(std::string constraint)
      : std::invalid_argument("parameter constraint violated: " + constraint),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

private:
  std::string constraint_;
};

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class IntegrationFailure : public std::runtime_error {
public:
  explicit IntegrationFailure(std::size_t step)
      : std::runtime_error("integration produced a non-finite state at step " + std::to_string(step)),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

// Wraps a failure raised while analysing one member of an ensemble.
class GameAnalysisFailure : public std::runtime_error {
public:
  GameAnalysisFailure(std::size_t index, const std::string& what)
      : std::runtime_error("game " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cyber_egt
