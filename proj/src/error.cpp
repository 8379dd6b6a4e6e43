#include "ribbon/error.hpp"

namespace ribbon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CentersCoincide: return "CentersCoincide";
    case ErrorCode::InternalTangentInfeasible: return "InternalTangentInfeasible";
    case ErrorCode::UnknownDisk: return "UnknownDisk";
    case ErrorCode::InfeasibleItinerary: return "InfeasibleItinerary";
    case ErrorCode::NonIntegerTurning: return "NonIntegerTurning";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidFamilyParameter: return "InvalidFamilyParameter";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::NonpositiveLength: return "NonpositiveLength";
    case ErrorCode::InfeasibleCentres: return "InfeasibleCentres";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace ribbon
