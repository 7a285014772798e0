#ifndef JAFRONT_UTF8_H_
#define JAFRONT_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace jafront::utf8 {

// Splits a UTF-8 string into code-point substrings. Malformed bytes are
// passed through one byte at a time.
std::vector<std::string> split_chars(std::string_view text);

std::vector<char32_t> decode(std::string_view text);
std::string encode(char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Number of code points.
std::size_t length(std::string_view text);

// Hiragana (U+3041..U+3096) shifted to the katakana block; everything else
// unchanged.
std::string hiragana_to_katakana(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);

}  // namespace jafront::utf8

#endif  // JAFRONT_UTF8_H_
