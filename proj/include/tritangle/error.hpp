#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tritangle {

enum class ErrorCode {
  kLengthMismatch,
  kDimensionTooSmall,
  kNotHermitian,
  kNotPositive,
  kNotUnitTrace,
  kSelectorOutOfRange,
  kNotUnitary,
  kDimMismatch,
  kNotSquare,
  kBadBlockDims,
  kNotSymmetric,
  kNotPSD,
  kRankTooLarge,
  kEmptyFamily,
  kBadEnsembleSize,
  kDominantTangleZero,
  kAsymmetryTooLarge,
  kBadDimension,
  kBadParameter,
  kNotNormalized,
  kBadRank,
  kBadRange,
  kParseError,
  kInternalConsistency,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tritangle
