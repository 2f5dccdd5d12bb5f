#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipprint {

enum class ErrorCode {
  kUnreadableFile,
  kMalformedHeader,
  kUnsupportedBitDepth,
  kInvalidArgument,
  kDimensionMismatch,
  kUnextractableSample,
  kMalformedTemplate,
  kDigestMismatch,
  kMalformedManifest,
  kMalformedConfig,
  kCanvasTooSmall,
  kInsufficientData,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a code so callers can tell
/// e.g. an unreadable file from a malformed header without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lipprint
