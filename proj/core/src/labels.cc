#include "jafront/labels.h"

#include <charconv>

#include "jafront/error.h"

namespace jafront {

NucleusLabel NucleusLabel::nucleus(int k) {
  if (k < 1 || k > kMaxNucleus) {
    throw Error(ErrorKind::kLabelOutOfRange,
                "nucleus label NUC" + std::to_string(k) + " outside 1.." +
                    std::to_string(kMaxNucleus));
  }
  return NucleusLabel(static_cast<std::size_t>(k) + 1);
}

NucleusLabel NucleusLabel::from_index(std::size_t index) {
  if (index >= kCount) {
    throw Error(ErrorKind::kLabelIndex,
                "nucleus label index " + std::to_string(index));
  }
  return NucleusLabel(index);
}

NucleusLabel NucleusLabel::parse(std::string_view token) {
  if (token == "KEEP") return keep();
  if (token == "FLAT") return flat();
  if (token.size() > 3 && token.substr(0, 3) == "NUC") {
    int k = 0;
    const auto digits = token.substr(3);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) {
      return nucleus(k);
    }
  }
  throw Error(ErrorKind::kParse,
              "bad nucleus label '" + std::string(token) + "'");
}

std::string NucleusLabel::to_string() const {
  if (is_keep()) return "KEEP";
  if (is_flat()) return "FLAT";
  return "NUC" + std::to_string(k());
}

ResolvedNucleus resolve_nucleus(const AccentPhrase& phrase,
                                const Sentence& sentence,
                                const std::vector<NucleusLabel>& labels) {
  if (labels.size() != sentence.size() || phrase.end > sentence.size() ||
      phrase.begin >= phrase.end) {
    throw Error(ErrorKind::kSpanMismatch,
                "phrase or labels do not match the sentence");
  }
  const int length = static_cast<int>(phrase_mora_count(phrase, sentence));
  int offset = 0;
  for (std::size_t i = phrase.begin; i < phrase.end; ++i) {
    const Morpheme& word = sentence.morphemes[i];
    const NucleusLabel label = labels[i];
    int position = 0;
    if (label.is_keep() && word.lexical_accent > 0) {
      position = offset + word.lexical_accent;
    } else if (label.is_nucleus()) {
      position = offset + label.k();
    }
    if (position > 0) {
      if (position > length) return {length, true};
      return {position, false};
    }
    offset += static_cast<int>(word.mora_count());
  }
  return {0, false};
}

std::size_t resolve_all(std::vector<AccentPhrase>& phrases,
                        const Sentence& sentence,
                        const std::vector<NucleusLabel>& labels) {
  std::size_t clamped = 0;
  for (AccentPhrase& p : phrases) {
    const ResolvedNucleus r = resolve_nucleus(p, sentence, labels);
    p.nucleus = r.nucleus;
    if (r.clamped) ++clamped;
  }
  return clamped;
}

}  // namespace jafront
