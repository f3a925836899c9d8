#include "permabound/error.hpp"

namespace permabound {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidMatrix: return "InvalidMatrix";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBadDimensions: return "BadDimensions";
    case ErrorCode::kNoPerfectMatching: return "NoPerfectMatching";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kOddN: return "OddN";
    case ErrorCode::kEntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::kBoundaryPoint: return "BoundaryPoint";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kNotBoolean: return "NotBoolean";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kZeroPermanent: return "ZeroPermanent";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kRejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::kCapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace permabound
