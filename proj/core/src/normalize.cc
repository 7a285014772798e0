#include "jafront/normalize.h"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "jafront/error.h"

namespace jafront {

std::string normalize_text(std::string_view text) {
  if (text.empty()) return {};
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kInvalidArgument, "ICU NFKC normalizer unavailable");
  }
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  const icu::UnicodeString folded = nfkc->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::kInvalidArgument, "normalization failed");
  }
  std::string out;
  folded.toUTF8String(out);
  return out;
}

}  // namespace jafront
