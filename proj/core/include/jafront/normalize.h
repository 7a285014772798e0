#ifndef JAFRONT_NORMALIZE_H_
#define JAFRONT_NORMALIZE_H_

#include <string>
#include <string_view>

namespace jafront {

// NFKC folding: full-width ASCII becomes ASCII, half-width katakana becomes
// full-width, compatibility ideographs are canonicalized. No verbalization
// of numbers or symbols.
std::string normalize_text(std::string_view text);

}  // namespace jafront

#endif  // JAFRONT_NORMALIZE_H_
