#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plasmod {

enum class ErrorCode {
  kInvalidArgument,
  kSingularMatrix,
  kNoConvergence,
  kDegenerateLeadingCoefficient,
  kNoRealFrequency,
  kExactResonanceSingularity,
  kEigenvalueHit,
  kSourceSingularity,
  kNegativeLoss,
  kDegenerateInterface,
  kResonantSingularity,
  kHypothesisViolated,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for the codes that mean "the system sits exactly on a resonance or
// pole", as opposed to malformed input.
bool is_singularity(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plasmod
