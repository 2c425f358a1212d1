// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "urgentkit/errors.hpp"

namespace urgentkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedContainer: return "MalformedContainer";
    case ErrorCode::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::kEmptyPayload: return "EmptyPayload";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInvalidBand: return "InvalidBand";
    case ErrorCode::kInvalidCutoff: return "InvalidCutoff";
    case ErrorCode::kDegenerateOverlap: return "DegenerateOverlap";
    case ErrorCode::kZeroReference: return "ZeroReference";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kRateMismatch: return "RateMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kZeroNoise: return "ZeroNoise";
    case ErrorCode::kMissingResource: return "MissingResource";
    case ErrorCode::kInvalidNoiseWindow: return "InvalidNoiseWindow";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kFrameAlignmentFailure: return "FrameAlignmentFailure";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kHashMismatch: return "HashMismatch";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kStageContract: return "StageContract";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace urgentkit
