#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cayley {

enum class ErrorCode {
  ParseError,
  InvalidTable,
  NotLatinSquare,
  NotAssociative,
  NoIdentity,
  NotNormal,
  NotAbelian,
  NotAutomorphism,
  NotCentral,
  NotDGenerated,
  FactorNotDGenerated,
  BudgetExceeded,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotDGenerated: return "NotDGenerated";
    case ErrorCode::FactorNotDGenerated: return "FactorNotDGenerated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

/// Base class of every error the library throws. The code is stable and is
/// what the CLI maps to exit codes and JSON status strings.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cayley
