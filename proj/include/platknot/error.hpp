#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace platknot {

/// Stable error identifiers. The CLI prints `error[<name>]` using error_name().
enum class ErrorCode {
  MalformedInput,
  NonAssociative,
  NonBijectiveRow,
  MissingIdentity,
  OrderCapExceeded,
  OrderMismatch,
  UnknownElement,
  CapExceeded,
  NotHomomorphism,
  NotSurjective,
  NonCentralKernel,
  BaseNotPerfect,
  ClassDoesNotGenerate,
  InconsistentMultiplier,
  BadOrbitStructure,
  MalformedRecord,
  DanglingArc,
  DisconnectedDiagram,
  OrientationInference,
  CrossingMatching,
  StrandMismatch,
  SignMismatch,
  DivisibilityViolation,
  CountOverflow,
  LiftAmbiguity,
  BudgetExceeded,
  NotSimpleGroup,
  AlphabetNotInvariant,
  ActionMismatch,
  UnknownGadget,
  InvalidArgument,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NonBijectiveRow: return "NonBijectiveRow";
    case ErrorCode::MissingIdentity: return "MissingIdentity";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NonCentralKernel: return "NonCentralKernel";
    case ErrorCode::BaseNotPerfect: return "BaseNotPerfect";
    case ErrorCode::ClassDoesNotGenerate: return "ClassDoesNotGenerate";
    case ErrorCode::InconsistentMultiplier: return "InconsistentMultiplier";
    case ErrorCode::BadOrbitStructure: return "BadOrbitStructure";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DanglingArc: return "DanglingArc";
    case ErrorCode::DisconnectedDiagram: return "DisconnectedDiagram";
    case ErrorCode::OrientationInference: return "OrientationInference";
    case ErrorCode::CrossingMatching: return "CrossingMatching";
    case ErrorCode::StrandMismatch: return "StrandMismatch";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::CountOverflow: return "CountOverflow";
    case ErrorCode::LiftAmbiguity: return "LiftAmbiguity";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotSimpleGroup: return "NotSimpleGroup";
    case ErrorCode::AlphabetNotInvariant: return "AlphabetNotInvariant";
    case ErrorCode::ActionMismatch: return "ActionMismatch";
    case ErrorCode::UnknownGadget: return "UnknownGadget";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace platknot
