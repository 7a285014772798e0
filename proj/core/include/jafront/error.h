#ifndef JAFRONT_ERROR_H_
#define JAFRONT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace jafront {

enum class ErrorKind {
  kInvalidPronunciation,
  kInvalidNucleus,
  kIo,
  kParse,
  kMissingField,
  kLabelOutOfRange,
  kDanglingBoundary,
  kSurfaceMismatch,
  kLookupBeforeFit,
  kUnknownSentenceId,
  kDimMismatch,
  kBadMagic,
  kEmptyRange,
  kWidthMismatch,
  kLabelIndex,
  kEmptySplit,
  kVersionMismatch,
  kCorrupt,
  kUnknownLemma,
  kSpanMismatch,
  kAlignmentMismatch,
  kLengthMismatch,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported through this one exception type;
// callers branch on kind() rather than on the dynamic type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jafront

#endif  // JAFRONT_ERROR_H_
