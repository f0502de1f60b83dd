#pragma once

#include <stdexcept>
#include <string>

namespace paley {

// Numeric values are the CLI exit codes; internal failures share code 4 or 5.
enum class ErrorCode : int {
  NotPrime = 2,
  WrongResidueClass = 3,
  ParameterRange = 4,
  MalformedInput = 5,
  DuplicateSupport = 6,
  VerificationFailure = 7,
  IndexOutOfRange = 10,
  NonHermitian = 11,
  NoConvergence = 12,
  NoRealRoot = 13,
  Unsatisfiable = 14,
  CombinatorialGuard = 15,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::WrongResidueClass: return "wrong_residue_class";
    case ErrorCode::ParameterRange: return "parameter_range";
    case ErrorCode::MalformedInput: return "malformed_input";
    case ErrorCode::DuplicateSupport: return "duplicate_support";
    case ErrorCode::VerificationFailure: return "verification_failure";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::NonHermitian: return "non_hermitian";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::NoRealRoot: return "no_real_root";
    case ErrorCode::Unsatisfiable: return "unsatisfiable";
    case ErrorCode::CombinatorialGuard: return "combinatorial_guard";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Process exit status for this error.
  int exit_code() const noexcept {
    switch (code_) {
      case ErrorCode::NotPrime:
      case ErrorCode::WrongResidueClass:
      case ErrorCode::ParameterRange:
      case ErrorCode::MalformedInput:
      case ErrorCode::DuplicateSupport:
      case ErrorCode::VerificationFailure:
        return static_cast<int>(code_);
      case ErrorCode::IndexOutOfRange:
      case ErrorCode::CombinatorialGuard:
      case ErrorCode::Unsatisfiable:
        return 4;
      default:
        return 5;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace paley
