#pragma once

#include <stdexcept>
#include <string>

namespace triopo {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range. `field()` names it.
class RangeError : public Error {
public:
  RangeError(std::string field, const std::string& what)
      : Error("RangeError: " + field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Pump power at, below or too close to the oscillation threshold.
class ThresholdError : public Error {
public:
  explicit ThresholdError(const std::string& what) : Error("ThresholdError: " + what) {}
};

class SingularFrequencyError : public Error {
public:
  explicit SingularFrequencyError(const std::string& what)
      : Error("SingularFrequencyError: " + what) {}
};

/// Any numerical failure: ill-conditioned resolvent, eigen-solver failure.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error("NumericError: " + what) {}
};

class DegenerateDirectionError : public Error {
public:
  explicit DegenerateDirectionError(const std::string& what)
      : Error("DegenerateDirectionError: " + what) {}
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error("DomainError: " + what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error("ConfigError: " + what) {}
};

class InsufficientDataError : public Error {
public:
  explicit InsufficientDataError(const std::string& what)
      : Error("InsufficientDataError: " + what) {}
};

}  // namespace triopo
