// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace urgentkit {

enum class ErrorCode {
  kMalformedContainer,
  kUnsupportedEncoding,
  kEmptyPayload,
  kIoFailure,
  kInvalidBand,
  kInvalidCutoff,
  kDegenerateOverlap,
  kZeroReference,
  kLengthMismatch,
  kRateMismatch,
  kZeroVector,
  kShapeMismatch,
  kZeroNoise,
  kMissingResource,
  kInvalidNoiseWindow,
  kInsufficientData,
  kFrameAlignmentFailure,
  kEmptyMask,
  kHashMismatch,
  kConfigError,
  kStageContract,
  kInvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace urgentkit
