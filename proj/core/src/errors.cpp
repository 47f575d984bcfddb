#include "factorchoi/errors.hpp"

namespace factorchoi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NotTracial: return "NotTracial";
    case ErrorCode::RepMismatch: return "RepMismatch";
    case ErrorCode::NotAProjection: return "NotAProjection";
    case ErrorCode::ZeroProjection: return "ZeroProjection";
    case ErrorCode::NotRankOneProjection: return "NotRankOneProjection";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::InternalDisagreement: return "InternalDisagreement";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

NotPositiveError::NotPositiveError(double min_eigenvalue, const std::string& what)
    : Error(ErrorCode::NotPositive, what), min_eigenvalue_(min_eigenvalue) {}

}  // namespace factorchoi
