#pragma once

#include <stdexcept>
#include <string>

namespace symtorus {

enum class ErrorCode {
  DimensionMismatch,
  DiscretizationMismatch,
  NotClosed,
  NotHarmonic,
  StepUnstable,
  NoConvergence,
  LiftBroken,
  OffGrid,
  FluxNotZero,
  NotHamiltonianConjugator,
  NoValidCandidate,
  NoDisplacer,
  InvalidArgument,
  Parse,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DiscretizationMismatch: return "DiscretizationMismatch";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotHarmonic: return "NotHarmonic";
    case ErrorCode::StepUnstable: return "StepUnstable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::LiftBroken: return "LiftBroken";
    case ErrorCode::OffGrid: return "OffGrid";
    case ErrorCode::FluxNotZero: return "FluxNotZero";
    case ErrorCode::NotHamiltonianConjugator: return "NotHamiltonianConjugator";
    case ErrorCode::NoValidCandidate: return "NoValidCandidate";
    case ErrorCode::NoDisplacer: return "NoDisplacer";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace symtorus
