#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyrellich {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  PointOutsideRegion,
  UnsupportedShape,
  UnsupportedDimension,
  DimensionMismatch,
  UnboundedWithoutWindow,
  RejectionBudgetExceeded,
  AllDirectionsUnbounded,
  InfiniteInradius,
  CubeBudgetExceeded,
  IllConditionedGram,
  TableExhausted,
  SupportTooNarrow,
  DifferentiationDisagreement,
  SupportTouchesBoundary,
  ZeroForm,
  GridTooCoarse,
  MissingKernelConstant,
  GammaTooSmall,
  InvariantViolation,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PointOutsideRegion: return "PointOutsideRegion";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnboundedWithoutWindow: return "UnboundedWithoutWindow";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::AllDirectionsUnbounded: return "AllDirectionsUnbounded";
    case ErrorCode::InfiniteInradius: return "InfiniteInradius";
    case ErrorCode::CubeBudgetExceeded: return "CubeBudgetExceeded";
    case ErrorCode::IllConditionedGram: return "IllConditionedGram";
    case ErrorCode::TableExhausted: return "TableExhausted";
    case ErrorCode::SupportTooNarrow: return "SupportTooNarrow";
    case ErrorCode::DifferentiationDisagreement: return "DifferentiationDisagreement";
    case ErrorCode::SupportTouchesBoundary: return "SupportTouchesBoundary";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::MissingKernelConstant: return "MissingKernelConstant";
    case ErrorCode::GammaTooSmall: return "GammaTooSmall";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code. Parse errors name the offending field in what().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {
inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}
}  // namespace detail

}  // namespace polyrellich
