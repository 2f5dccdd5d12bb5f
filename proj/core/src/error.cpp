#include "lipprint/error.hpp"

namespace lipprint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnreadableFile: return "unreadable file";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kUnsupportedBitDepth: return "unsupported bit depth";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kUnextractableSample: return "unextractable sample";
    case ErrorCode::kMalformedTemplate: return "malformed template";
    case ErrorCode::kDigestMismatch: return "digest mismatch";
    case ErrorCode::kMalformedManifest: return "malformed manifest";
    case ErrorCode::kMalformedConfig: return "malformed config";
    case ErrorCode::kCanvasTooSmall: return "canvas too small";
    case ErrorCode::kInsufficientData: return "insufficient data";
    case ErrorCode::kIo: return "i/o failure";
  }
  return "unknown error";
}

}  // namespace lipprint
