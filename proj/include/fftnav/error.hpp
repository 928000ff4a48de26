#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fftnav {

enum class ErrorCode {
  kInvalidRadii,
  kOutOfFov,
  kInvalidArgument,
  kTcExceedsLength,
  kInvalidCutoff,
  kBadSize,
  kBankMismatch,
  kShapeMismatch,
  kEmptyObservation,
  kMalformedHeader,
  kTruncatedPayload,
  kBadVersion,
  kPlacementFailure,
  kConfigInvalid,
  kNoPath,
  kLengthMismatch,
  kBadConfig,
  kMissingFile,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library surface as fftnav::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fftnav
