#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reflectum {

enum class ErrorCode {
  InvalidPrime,
  ZeroInput,
  NoDecomposition,
  NotSquarefree,
  InvalidDiscriminant,
  CurveMismatch,
  TwoTorsion,
  NotInTn,
  NotInZn,
  PoleAtTorsion,
  NotPythPair,
  NotInPn,
  WrongArea,
  MapsToInfinity,
  NotSixthPowerFree,
  NotOnCurve,
  NotAHalving,
  ZeroExcluded,
  NoSpecialForm,
  InvalidArgument,
  ParseError,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NoDecomposition: return "NoDecomposition";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorCode::CurveMismatch: return "CurveMismatch";
    case ErrorCode::TwoTorsion: return "TwoTorsion";
    case ErrorCode::NotInTn: return "NotInTn";
    case ErrorCode::NotInZn: return "NotInZn";
    case ErrorCode::PoleAtTorsion: return "PoleAtTorsion";
    case ErrorCode::NotPythPair: return "NotPythPair";
    case ErrorCode::NotInPn: return "NotInPn";
    case ErrorCode::WrongArea: return "WrongArea";
    case ErrorCode::MapsToInfinity: return "MapsToInfinity";
    case ErrorCode::NotSixthPowerFree: return "NotSixthPowerFree";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::NotAHalving: return "NotAHalving";
    case ErrorCode::ZeroExcluded: return "ZeroExcluded";
    case ErrorCode::NoSpecialForm: return "NoSpecialForm";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every precondition failure in the library is reported as an Error
/// carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace reflectum
