#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lipfree {

enum class ErrorCode {
  // metric-core
  NonSquareMatrix,
  BadBaseIndex,
  DuplicateLabel,
  NegativeDistance,
  AsymmetricDistance,
  ZeroDistanceDistinctPoints,
  TriangleViolation,
  EmptySet,
  DegeneratePair,
  EpsilonOutOfRange,
  // free-core
  UnknownLabel,
  SpaceMismatch,
  EmptyFamily,
  // lip-core
  BaseValueNonzero,
  NonpositiveRadius,
  NotOneLipschitzOnDomain,
  SupportNotContained,
  DomainMismatch,
  // norm-engine
  NotInUnitBall,
  EmptyFace,
  NotPositive,
  ZeroElement,
  // extremal-lab
  SingletonSupport,
  NotNormalized,
  // cli-io
  ParseError,
  UnknownCommand,
  InvalidArgument,
  // a certificate did not verify; always an implementation bug
  InternalVerificationFailure,
};

std::string_view error_code_name(ErrorCode code);

/// All toolkit failures. `indices` carries the witnessing point indices where
/// the error has them (e.g. the triple of a triangle violation).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> indices = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> indices_;
};

/// Input-format failure with a 1-based source position (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Throws InternalVerificationFailure with `what` when `condition` is false.
void verify(bool condition, const std::string& what);

}  // namespace lipfree
