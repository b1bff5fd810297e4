#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmt {

enum class ErrorCode {
  // construction of spaces, states, observables
  DuplicateLabel,
  EmptySpace,
  UnknownLabel,
  DuplicateOutcome,
  EmptyOutcomes,
  UnknownOutcome,
  NegativeEffect,
  ColumnNotNormalized,
  NegativeWeight,
  NotNormalized,
  DimensionMismatch,
  SpaceMismatch,
  // sessions
  SessionConsumed,
  StateUnknown,
  // inference
  ZeroLikelihoodEverywhere,
  ZeroEvidence,
  // causality
  InvalidTree,
  MissingOperator,
  NotMarkov,
  NotComparable,
  // symmetry
  NotBijection,
  IndexOutOfRange,
  InvalidWeights,
  NotUniformWeights,
  StateDependent,
  // problems
  InvalidSpec,
  InvalidAlpha,
  InvalidPrior,
  MissingPrior,
  PriorSuppliedForFisher,
  PriorSuppliedForEqualProbability,
  VariantMismatch,
  // simulation
  InvalidConfig,
  NoConditioningEvents,
  // io
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateOutcome: return "DuplicateOutcome";
    case ErrorCode::EmptyOutcomes: return "EmptyOutcomes";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::NegativeEffect: return "NegativeEffect";
    case ErrorCode::ColumnNotNormalized: return "ColumnNotNormalized";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::SessionConsumed: return "SessionConsumed";
    case ErrorCode::StateUnknown: return "StateUnknown";
    case ErrorCode::ZeroLikelihoodEverywhere: return "ZeroLikelihoodEverywhere";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::MissingOperator: return "MissingOperator";
    case ErrorCode::NotMarkov: return "NotMarkov";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NotBijection: return "NotBijection";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::NotUniformWeights: return "NotUniformWeights";
    case ErrorCode::StateDependent: return "StateDependent";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidPrior: return "InvalidPrior";
    case ErrorCode::MissingPrior: return "MissingPrior";
    case ErrorCode::PriorSuppliedForFisher: return "PriorSuppliedForFisher";
    case ErrorCode::PriorSuppliedForEqualProbability: return "PriorSuppliedForEqualProbability";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NoConditioningEvents: return "NoConditioningEvents";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as this exception; `code()` is the
/// machine-readable part and `what()` carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for the errors that mean "the inference is degenerate" rather than
/// "the input is malformed".
constexpr bool is_degenerate_inference(ErrorCode code) {
  return code == ErrorCode::ZeroEvidence || code == ErrorCode::ZeroLikelihoodEverywhere;
}

}  // namespace cmt
