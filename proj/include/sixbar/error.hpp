#pragma once

#include <stdexcept>
#include <string>

namespace sixbar {

enum class ErrorCode {
  InvalidInput,
  DegenerateConfiguration,
  IndeterminateWeights,
  IndeterminateDualTerm,
  NonzeroDegreeOfDifficulty,
  PrimalRecoveryFailed,
  DualityCheckFailed,
  SynthesisInfeasible,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Raised by every module for contract violations and solver failures.
/// "No assembly" is not an error; it is reported through std::optional.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid input";
    case ErrorCode::DegenerateConfiguration: return "degenerate configuration";
    case ErrorCode::IndeterminateWeights: return "indeterminate weights";
    case ErrorCode::IndeterminateDualTerm: return "indeterminate dual term";
    case ErrorCode::NonzeroDegreeOfDifficulty: return "nonzero degree of difficulty";
    case ErrorCode::PrimalRecoveryFailed: return "primal recovery failed";
    case ErrorCode::DualityCheckFailed: return "duality check failed";
    case ErrorCode::SynthesisInfeasible: return "synthesis infeasible";
    case ErrorCode::Io: return "io error";
  }
  return "unknown error";
}

#define SIXBAR_REQUIRE(cond, code, msg)          \
  do {                                           \
    if (!(cond)) throw ::sixbar::Error((code), (msg)); \
  } while (0)

}  // namespace sixbar
