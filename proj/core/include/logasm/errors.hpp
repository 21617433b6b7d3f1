#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logasm {

// Every library failure derives from Error so callers (the CLI in
// particular) can map the whole family onto one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class LevelMismatchError : public Error {
 public:
  LevelMismatchError(std::size_t level, std::size_t expected)
      : Error("component vector has size statistic " + std::to_string(level) +
              ", expected " + std::to_string(expected)),
        level_(level),
        expected_(expected) {}

  std::size_t level() const noexcept { return level_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::size_t level_;
  std::size_t expected_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class DegenerateConditioningError : public Error {
 public:
  using Error::Error;
};

class RetryBudgetError : public Error {
 public:
  explicit RetryBudgetError(std::size_t attempts)
      : Error("rejection sampler exhausted its budget of " +
              std::to_string(attempts) + " attempts"),
        attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

class CostGuardError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class RegimeError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of an inequality lemma cannot be met by the given input
// (e.g. a pmf with zero mass at the origin).
class ConditionViolation : public Error {
 public:
  ConditionViolation(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace logasm
