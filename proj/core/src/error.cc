#include "jafront/error.h"

namespace jafront {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidPronunciation: return "InvalidPronunciation";
    case ErrorKind::kInvalidNucleus: return "InvalidNucleus";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kMissingField: return "MissingField";
    case ErrorKind::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::kDanglingBoundary: return "DanglingBoundary";
    case ErrorKind::kSurfaceMismatch: return "SurfaceMismatch";
    case ErrorKind::kLookupBeforeFit: return "LookupBeforeFit";
    case ErrorKind::kUnknownSentenceId: return "UnknownSentenceId";
    case ErrorKind::kDimMismatch: return "DimMismatch";
    case ErrorKind::kBadMagic: return "BadMagic";
    case ErrorKind::kEmptyRange: return "EmptyRange";
    case ErrorKind::kWidthMismatch: return "WidthMismatch";
    case ErrorKind::kLabelIndex: return "LabelIndexOutOfRange";
    case ErrorKind::kEmptySplit: return "EmptySplit";
    case ErrorKind::kVersionMismatch: return "VersionMismatch";
    case ErrorKind::kCorrupt: return "Corrupt";
    case ErrorKind::kUnknownLemma: return "UnknownLemma";
    case ErrorKind::kSpanMismatch: return "SpanMismatch";
    case ErrorKind::kAlignmentMismatch: return "AlignmentMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace jafront
