#include "tritangle/error.hpp"

namespace tritangle {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kNotUnitTrace: return "NotUnitTrace";
    case ErrorCode::kSelectorOutOfRange: return "SelectorOutOfRange";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kBadBlockDims: return "BadBlockDims";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kRankTooLarge: return "RankTooLarge";
    case ErrorCode::kEmptyFamily: return "EmptyFamily";
    case ErrorCode::kBadEnsembleSize: return "BadEnsembleSize";
    case ErrorCode::kDominantTangleZero: return "DominantTangleZero";
    case ErrorCode::kAsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kBadParameter: return "BadParameter";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kBadRank: return "BadRank";
    case ErrorCode::kBadRange: return "BadRange";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

}  // namespace tritangle
