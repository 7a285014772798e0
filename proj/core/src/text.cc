#include "jafront/text.h"

#include <sstream>

#include "jafront/error.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

constexpr char32_t kLongVowel = U'ー';
constexpr char32_t kSokuon = U'ッ';
constexpr char32_t kNasal = U'ン';

bool is_glide(char32_t cp) {
  switch (cp) {
    case U'ャ': case U'ュ': case U'ョ':
    case U'ァ': case U'ィ': case U'ゥ': case U'ェ': case U'ォ':
    case U'ヮ':
      return true;
    default:
      return false;
  }
}

bool is_katakana(char32_t cp) {
  return (cp >= 0x30A1 && cp <= 0x30FA) || cp == kLongVowel;
}

// Kana that can carry a following glide.
bool is_base(char32_t cp) {
  return is_katakana(cp) && !is_glide(cp) && cp != kLongVowel &&
         cp != kSokuon && cp != kNasal;
}

}  // namespace

std::vector<Mora> segment_morae(std::string_view pronunciation) {
  const std::vector<char32_t> cps = utf8::decode(pronunciation);
  std::vector<Mora> out;
  out.reserve(cps.size());
  bool can_attach = false;
  std::size_t byte_offset = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    const std::string ch = utf8::encode(cp);
    if (!is_katakana(cp)) {
      std::ostringstream msg;
      msg << "character '" << ch << "' at offset " << i << " (byte "
          << byte_offset << ") in \"" << pronunciation << "\" is not katakana";
      throw Error(ErrorKind::kInvalidPronunciation, msg.str());
    }
    if (is_glide(cp)) {
      if (!can_attach) {
        std::ostringstream msg;
        msg << "small kana '" << ch << "' at offset " << i << " in \""
            << pronunciation << "\" has no base kana to attach to";
        throw Error(ErrorKind::kInvalidPronunciation, msg.str());
      }
      out.back().text += ch;
      can_attach = false;
    } else {
      out.push_back(Mora{ch});
      can_attach = is_base(cp);
    }
    byte_offset += ch.size();
  }
  return out;
}

std::string join_morae(const std::vector<Mora>& morae) {
  std::string out;
  for (const Mora& m : morae) out += m.text;
  return out;
}

void Morpheme::set_pronunciation(std::string value) {
  morae = segment_morae(value);
  pronunciation = std::move(value);
}

std::size_t Sentence::mora_count() const {
  std::size_t n = 0;
  for (const Morpheme& m : morphemes) n += m.mora_count();
  return n;
}

std::string Sentence::surface() const {
  std::string out;
  for (const Morpheme& m : morphemes) out += m.surface;
  return out;
}

std::size_t phrase_mora_count(const AccentPhrase& phrase,
                              const Sentence& sentence) {
  std::size_t n = 0;
  for (std::size_t i = phrase.begin; i < phrase.end; ++i) {
    n += sentence.morphemes.at(i).mora_count();
  }
  return n;
}

std::vector<AccentPhrase> phrases_from_boundaries(
    const std::vector<bool>& boundaries) {
  std::vector<AccentPhrase> out;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (i == 0 || boundaries[i]) {
      if (!out.empty()) out.back().end = i;
      out.push_back(AccentPhrase{i, i + 1, 0});
    }
  }
  if (!out.empty()) out.back().end = boundaries.size();
  return out;
}

std::vector<bool> boundaries_from_phrases(
    const std::vector<AccentPhrase>& phrases, std::size_t morpheme_count) {
  check_partition(phrases, morpheme_count);
  std::vector<bool> out(morpheme_count, false);
  for (const AccentPhrase& p : phrases) out[p.begin] = true;
  return out;
}

void check_partition(const std::vector<AccentPhrase>& phrases,
                     std::size_t morpheme_count) {
  std::size_t expected = 0;
  for (const AccentPhrase& p : phrases) {
    if (p.begin != expected || p.end <= p.begin) {
      std::ostringstream msg;
      msg << "phrase [" << p.begin << "," << p.end
          << ") does not continue the partition at " << expected;
      throw Error(ErrorKind::kSpanMismatch, msg.str());
    }
    expected = p.end;
  }
  if (expected != morpheme_count) {
    std::ostringstream msg;
    msg << "phrases cover " << expected << " of " << morpheme_count
        << " morphemes";
    throw Error(ErrorKind::kSpanMismatch, msg.str());
  }
}

std::string PitchSequence::to_string() const {
  std::string out;
  out.reserve(labels.size());
  for (Pitch p : labels) out.push_back(p == Pitch::kHigh ? 'H' : 'L');
  return out;
}

std::vector<Pitch> render_phrase(std::size_t mora_count, int nucleus) {
  if (nucleus < 0 || static_cast<std::size_t>(nucleus) > mora_count) {
    std::ostringstream msg;
    msg << "nucleus " << nucleus << " outside phrase of " << mora_count
        << " morae";
    throw Error(ErrorKind::kInvalidNucleus, msg.str());
  }
  std::vector<Pitch> out(mora_count, Pitch::kLow);
  const std::size_t n = static_cast<std::size_t>(nucleus);
  if (n == 0) {
    for (std::size_t i = 1; i < mora_count; ++i) out[i] = Pitch::kHigh;
  } else if (n == 1) {
    out[0] = Pitch::kHigh;
  } else {
    for (std::size_t i = 1; i < n; ++i) out[i] = Pitch::kHigh;
  }
  return out;
}

PitchSequence render_pitch(const std::vector<AccentPhrase>& phrases,
                           const Sentence& sentence) {
  check_partition(phrases, sentence.size());
  PitchSequence out;
  out.labels.reserve(sentence.mora_count());
  for (const AccentPhrase& p : phrases) {
    const std::vector<Pitch> part =
        render_phrase(phrase_mora_count(p, sentence), p.nucleus);
    out.labels.insert(out.labels.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace jafront
