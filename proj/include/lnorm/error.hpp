#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lnorm {

enum class ErrorCode {
  RaggedRows,
  NonIntegerToken,
  EmptyMatrix,
  EntryOutOfRange,
  AbsSumOverflow,
  TooManyRows,
  InvalidMode,
  IndexOutOfRange,
  SizeTooLarge,
  DimensionMismatch,
  NonConsecutiveStep,
  TooLargeForOracle,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonIntegerToken: return "NonIntegerToken";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::AbsSumOverflow: return "AbsSumOverflow";
    case ErrorCode::TooManyRows: return "TooManyRows";
    case ErrorCode::InvalidMode: return "InvalidMode";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonConsecutiveStep: return "NonConsecutiveStep";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them to stable exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lnorm
