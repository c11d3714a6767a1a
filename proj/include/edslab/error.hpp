#pragma once

#include <stdexcept>
#include <string>

namespace edslab {

enum class ErrorKind {
  Parse,
  Precondition,
  SingularReduction,
  SingularOperand,
  TorsionPoint,
  NonSquareDenominator,
  ZeroArgument,
  FactorizationFailure,
  TermCapExceeded,
  NotFound,
  UnclassifiableArrow,
  VerificationFailed,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Precondition: return "PreconditionFailed";
    case ErrorKind::SingularReduction: return "SingularReduction";
    case ErrorKind::SingularOperand: return "SingularOperand";
    case ErrorKind::TorsionPoint: return "TorsionPoint";
    case ErrorKind::NonSquareDenominator: return "NonSquareDenominator";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::TermCapExceeded: return "TermCapExceeded";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::UnclassifiableArrow: return "UnclassifiableArrow";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Internal-consistency failures map to exit code 3, everything else to 2.
  bool is_internal() const noexcept {
    return kind_ == ErrorKind::NonSquareDenominator || kind_ == ErrorKind::UnclassifiableArrow ||
           kind_ == ErrorKind::VerificationFailed;
  }

 private:
  ErrorKind kind_;
};

}  // namespace edslab
