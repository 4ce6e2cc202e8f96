#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sslud {

enum class ErrorCode {
  NoSignChange,
  NonFinite,
  EmptyBracket,
  MaxDepthExceeded,
  DomainError,
  DegenerateTail,
  DegenerateSample,
  NonPositivePrice,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyBracket: return "EmptyBracket";
    case ErrorCode::MaxDepthExceeded: return "MaxDepthExceeded";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateTail: return "DegenerateTail";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sslud
