#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace camforge {

enum class ErrorCode {
  InvalidArgument,
  LockedRange,
  NotLinear,
  ZeroStiffness,
  ParseError,
  NonIntegerExponent,
  OutOfTable,
  QuadratureFailure,
  NonFiniteForce,
  OutOfDomain,
  TravelExceeded,
  NonMonotoneX,
  SearchWindowEmpty,
  RootSingularity,
  EmptyDomain,
  InvalidInitialState,
  NoOverlap,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every model and I/O failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised for malformed expressions. NonIntegerExponent failures use the
/// same type with code() == ErrorCode::NonIntegerExponent.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected, const std::string& message,
             ErrorCode code = ErrorCode::ParseError)
      : Error(code, message), offset_(offset), expected_(std::move(expected)) {}

  /// Byte offset into the input where parsing stopped.
  std::size_t offset() const noexcept { return offset_; }
  /// Human-readable set of tokens that would have been accepted.
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace camforge
