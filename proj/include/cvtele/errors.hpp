#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvtele {

enum class ErrorKind {
  invalid_argument,
  capacity,
  accuracy,
  consistency,
  degenerate_state,
  evaluation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. The kind is what the CLI
/// reports in its machine-readable error record.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate)
      : Error(ErrorKind::accuracy, what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::consistency, what) {}
};

class DegenerateStateError : public Error {
 public:
  explicit DegenerateStateError(const std::string& what) : Error(ErrorKind::degenerate_state, what) {}
};

class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double delta) : Error(ErrorKind::evaluation, what), delta_(delta) {}
  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

}  // namespace cvtele
