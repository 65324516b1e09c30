#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crnmss {

enum class ErrorCode {
  // model
  DuplicateSpecies,
  InvalidSpeciesName,
  TrivialReaction,
  OrphanSpecies,
  EmptyNetwork,
  DimensionMismatch,
  // parser
  SyntaxError,
  NegativeCoefficient,
  ZeroRate,
  UnknownDirective,
  ConflictingRate,
  // classify
  NotOneReaction,
  NotFullyOpen,
  EmptyResult,
  AtomNotOpen,
  // defone
  HypothesesFailed,
  KernelDimensionUnexpected,
  NoOrientation,
  NoDisconnect,
  BudgetExceeded,
  // dynamics
  ZeroPolynomial,
  BadExponents,
  MissingRate,
  NonpositiveRate,
  // cli
  NoMssVerdict,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSpecies: return "DuplicateSpecies";
    case ErrorCode::InvalidSpeciesName: return "InvalidSpeciesName";
    case ErrorCode::TrivialReaction: return "TrivialReaction";
    case ErrorCode::OrphanSpecies: return "OrphanSpecies";
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::ZeroRate: return "ZeroRate";
    case ErrorCode::UnknownDirective: return "UnknownDirective";
    case ErrorCode::ConflictingRate: return "ConflictingRate";
    case ErrorCode::NotOneReaction: return "NotOneReaction";
    case ErrorCode::NotFullyOpen: return "NotFullyOpen";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::AtomNotOpen: return "AtomNotOpen";
    case ErrorCode::HypothesesFailed: return "HypothesesFailed";
    case ErrorCode::KernelDimensionUnexpected: return "KernelDimensionUnexpected";
    case ErrorCode::NoOrientation: return "NoOrientation";
    case ErrorCode::NoDisconnect: return "NoDisconnect";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::MissingRate: return "MissingRate";
    case ErrorCode::NonpositiveRate: return "NonpositiveRate";
    case ErrorCode::NoMssVerdict: return "NoMssVerdict";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error raised while reading DSL text; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace crnmss
