#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ribbon {

enum class ErrorCode {
  CentersCoincide,
  InternalTangentInfeasible,
  UnknownDisk,
  InfeasibleItinerary,
  NonIntegerTurning,
  UnknownName,
  InvalidFamilyParameter,
  InfeasibleStart,
  NonpositiveLength,
  InfeasibleCentres,
  GridTooCoarse,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` identifies
// which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ribbon
