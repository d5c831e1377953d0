#include "hullcheck/error.hpp"

namespace hullcheck {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::NoMixedResults: return "NoMixedResults";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::NotOverlapping: return "NotOverlapping";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotTypeI: return "NotTypeI";
    case ErrorCode::SingularVminus: return "SingularVminus";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CompositionFailed: return "CompositionFailed";
    case ErrorCode::UnknownBasis: return "UnknownBasis";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace hullcheck
