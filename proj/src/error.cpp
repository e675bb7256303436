#include "lipfree/error.hpp"

namespace lipfree {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorCode::BadBaseIndex: return "BadBaseIndex";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::AsymmetricDistance: return "AsymmetricDistance";
    case ErrorCode::ZeroDistanceDistinctPoints: return "ZeroDistanceDistinctPoints";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::BaseValueNonzero: return "BaseValueNonzero";
    case ErrorCode::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorCode::NotOneLipschitzOnDomain: return "NotOneLipschitzOnDomain";
    case ErrorCode::SupportNotContained: return "SupportNotContained";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotInUnitBall: return "NotInUnitBall";
    case ErrorCode::EmptyFace: return "EmptyFace";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::SingletonSupport: return "SingletonSupport";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalVerificationFailure: return "InternalVerificationFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::size_t> indices)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      indices_(std::move(indices)) {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorCode::ParseError,
            line ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                 : message),
      line_(line),
      column_(column) {}

void verify(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::InternalVerificationFailure, what);
}

}  // namespace lipfree
