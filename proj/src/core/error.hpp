#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gconv {

// Numeric values are part of the C API (gconv.h mirrors them); append only.
enum class ErrorCode : int {
  InvalidArgument = 1,
  DimensionMismatch = 2,
  NotDivisible = 3,
  MetricGroupMismatch = 4,
  UnsupportedCombination = 5,
  InvalidMetric = 6,
  NotAHomomorphism = 7,
  GroupMismatch = 8,
  RhoNotCertifiedBelowOne = 9,
  NotComplete = 10,
  NoConvergenceWithinBudget = 11,
  SNotInvertible = 12,
  UnsupportedMixedSum = 13,
  NotFinite = 14,
  NotEnumerable = 15,
  EmptySet = 16,
  UnsupportedRepresentation = 17,
  GeneratorExhausted = 18,
  ParseError = 19,
  ValidationError = 20,
  TooLarge = 21,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, ErrorCode cause, const std::string& message)
      : std::runtime_error(message), code_(code), cause_(cause) {}

  ErrorCode code() const noexcept { return code_; }
  // Set on ValidationError: the module error that triggered it.
  std::optional<ErrorCode> cause() const noexcept { return cause_; }

 private:
  ErrorCode code_;
  std::optional<ErrorCode> cause_;
};

class ParseError : public Error {
 public:
  // line is 1-based; 0 when the problem is structural and has no single line.
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::ParseError,
              line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gconv
