#include "error.hpp"

namespace gconv {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::MetricGroupMismatch: return "MetricGroupMismatch";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::RhoNotCertifiedBelowOne: return "RhoNotCertifiedBelowOne";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NoConvergenceWithinBudget: return "NoConvergenceWithinBudget";
    case ErrorCode::SNotInvertible: return "SNotInvertible";
    case ErrorCode::UnsupportedMixedSum: return "UnsupportedMixedSum";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotEnumerable: return "NotEnumerable";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

}  // namespace gconv
