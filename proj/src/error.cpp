#include "fftnav/error.hpp"

namespace fftnav {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidRadii: return "invalid-radii";
    case ErrorCode::kOutOfFov: return "out-of-fov";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kTcExceedsLength: return "tc-exceeds-length";
    case ErrorCode::kInvalidCutoff: return "invalid-cutoff";
    case ErrorCode::kBadSize: return "bad-size";
    case ErrorCode::kBankMismatch: return "bank-mismatch";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kEmptyObservation: return "empty-observation";
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kTruncatedPayload: return "truncated-payload";
    case ErrorCode::kBadVersion: return "bad-version";
    case ErrorCode::kPlacementFailure: return "placement-failure";
    case ErrorCode::kConfigInvalid: return "config-invalid";
    case ErrorCode::kNoPath: return "no-path";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kBadConfig: return "bad-config";
    case ErrorCode::kMissingFile: return "missing-file";
  }
  return "unknown";
}

}  // namespace fftnav
