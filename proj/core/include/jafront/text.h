#ifndef JAFRONT_TEXT_H_
#define JAFRONT_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jafront {

// One timing unit of a katakana pronunciation: a base kana with an optional
// small glide, or a standalone ー / ッ / ン.
struct Mora {
  std::string text;

  friend bool operator==(const Mora&, const Mora&) = default;
};

// Splits a katakana pronunciation into morae. Throws
// ErrorKind::kInvalidPronunciation on a non-katakana character or on a small
// glide with no base kana to attach to.
std::vector<Mora> segment_morae(std::string_view pronunciation);

std::string join_morae(const std::vector<Mora>& morae);

inline constexpr std::string_view kUnknownPos = "unknown";

struct Morpheme {
  std::string surface;
  std::string pos;
  std::string pronunciation;
  std::vector<Mora> morae;
  int lexical_accent = 0;  // 0 = heiban
  std::string conjugation_form = "*";
  std::string conjugation_type = "*";
  std::string word_type = "*";
  std::string accent_combination_type = "*";
  bool is_polyphone_target = false;
  std::optional<std::string> polyphone_lemma;

  std::size_t mora_count() const { return morae.size(); }

  // Replaces the pronunciation and re-derives the mora segmentation.
  void set_pronunciation(std::string value);
};

struct Sentence {
  std::string id;
  std::string raw;
  std::vector<Morpheme> morphemes;

  std::size_t size() const { return morphemes.size(); }
  std::size_t mora_count() const;
  std::string surface() const;
};

// Half-open morpheme span [begin, end) with a 1-based nucleus counted in
// morae from the start of the phrase; 0 means flat.
struct AccentPhrase {
  std::size_t begin = 0;
  std::size_t end = 0;
  int nucleus = 0;

  std::size_t word_count() const { return end - begin; }
  friend bool operator==(const AccentPhrase&, const AccentPhrase&) = default;
};

std::size_t phrase_mora_count(const AccentPhrase& phrase,
                              const Sentence& sentence);

// Builds phrase spans from per-morpheme "boundary before this word" flags.
// Nuclei are left at 0.
std::vector<AccentPhrase> phrases_from_boundaries(
    const std::vector<bool>& boundaries);

std::vector<bool> boundaries_from_phrases(
    const std::vector<AccentPhrase>& phrases, std::size_t morpheme_count);

// Throws kSpanMismatch unless the phrases partition [0, morpheme_count).
void check_partition(const std::vector<AccentPhrase>& phrases,
                     std::size_t morpheme_count);

enum class Pitch : unsigned char { kLow, kHigh };

struct PitchSequence {
  std::vector<Pitch> labels;

  std::string to_string() const;  // "LHHL..."
  friend bool operator==(const PitchSequence&, const PitchSequence&) = default;
};

// Tokyo-style rendering per phrase of N morae and nucleus n:
//   n = 0: L H...H;  n = 1: H L...L;  2 <= n <= N: L H^(n-1) L^(N-n).
// Throws kInvalidNucleus when n > N or n < 0, kSpanMismatch when the phrases
// do not partition the sentence.
PitchSequence render_pitch(const std::vector<AccentPhrase>& phrases,
                           const Sentence& sentence);

// Rendering of a single phrase of the given length.
std::vector<Pitch> render_phrase(std::size_t mora_count, int nucleus);

}  // namespace jafront

#endif  // JAFRONT_TEXT_H_
