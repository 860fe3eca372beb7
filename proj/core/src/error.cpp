#include "plasmod/error.hpp"

namespace plasmod {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::kNoRealFrequency: return "NoRealFrequency";
    case ErrorCode::kExactResonanceSingularity: return "ExactResonanceSingularity";
    case ErrorCode::kEigenvalueHit: return "EigenvalueHit";
    case ErrorCode::kSourceSingularity: return "SourceSingularity";
    case ErrorCode::kNegativeLoss: return "NegativeLoss";
    case ErrorCode::kDegenerateInterface: return "DegenerateInterface";
    case ErrorCode::kResonantSingularity: return "ResonantSingularity";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
  }
  return "Unknown";
}

bool is_singularity(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kSingularMatrix:
    case ErrorCode::kExactResonanceSingularity:
    case ErrorCode::kEigenvalueHit:
    case ErrorCode::kSourceSingularity:
    case ErrorCode::kResonantSingularity:
    case ErrorCode::kNoConvergence:
      return true;
    default:
      return false;
  }
}

}  // namespace plasmod
