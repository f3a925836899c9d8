#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permabound {

enum class ErrorCode {
  kInvalidMatrix,
  kParseError,
  kBadDimensions,
  kNoPerfectMatching,
  kNotConverged,
  kTooLarge,
  kOddN,
  kEntryOutOfRange,
  kBoundaryPoint,
  kDomainError,
  kNotBoolean,
  kInfeasible,
  kZeroPermanent,
  kUnbounded,
  kRejectionBudgetExceeded,
  kCapExceeded,
};

std::string_view to_string(ErrorCode code);

// Every failure reported by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permabound
