#ifndef JAFRONT_LABELS_H_
#define JAFRONT_LABELS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "jafront/text.h"

namespace jafront {

// How a word's own accent contributes to its phrase nucleus.
//   KEEP   - the word keeps its lexical accent
//   FLAT   - the word contributes no nucleus
//   NUC(k) - the nucleus falls on the word's k-th mora
class NucleusLabel {
 public:
  static constexpr int kMaxNucleus = 10;
  // KEEP, FLAT, NUC1..NUC10.
  static constexpr std::size_t kCount = 2 + kMaxNucleus;

  static NucleusLabel keep() { return NucleusLabel(0); }
  static NucleusLabel flat() { return NucleusLabel(1); }
  static NucleusLabel nucleus(int k);  // throws kLabelOutOfRange unless 1..10
  static NucleusLabel from_index(std::size_t index);

  // Accepts "KEEP", "FLAT", "NUC<k>".
  static NucleusLabel parse(std::string_view token);

  bool is_keep() const { return index_ == 0; }
  bool is_flat() const { return index_ == 1; }
  bool is_nucleus() const { return index_ >= 2; }
  int k() const { return is_nucleus() ? static_cast<int>(index_) - 1 : 0; }

  std::size_t index() const { return index_; }
  std::string to_string() const;

  friend bool operator==(NucleusLabel, NucleusLabel) = default;

 private:
  explicit NucleusLabel(std::size_t index) : index_(index) {}
  std::size_t index_;
};

struct ResolvedNucleus {
  int nucleus = 0;
  bool clamped = false;
};

// Leftmost contributing word fixes the phrase nucleus. KEEP contributes when
// the word's lexical accent is positive (offset + accent); NUC(k) contributes
// offset + k. No contributor gives 0. Values beyond the phrase length are
// clamped and flagged.
ResolvedNucleus resolve_nucleus(const AccentPhrase& phrase,
                                const Sentence& sentence,
                                const std::vector<NucleusLabel>& labels);

// Resolves every phrase in place; returns the number of clamped phrases.
std::size_t resolve_all(std::vector<AccentPhrase>& phrases,
                        const Sentence& sentence,
                        const std::vector<NucleusLabel>& labels);

}  // namespace jafront

#endif  // JAFRONT_LABELS_H_
