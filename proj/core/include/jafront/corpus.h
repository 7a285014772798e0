#ifndef JAFRONT_CORPUS_H_
#define JAFRONT_CORPUS_H_

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jafront/labels.h"
#include "jafront/text.h"

namespace jafront {

// A gold-tokenized sentence with its manual annotation.
struct AnnotatedSentence {
  Sentence sentence;
  std::vector<bool> boundaries;             // one per morpheme, [0] is true
  std::vector<NucleusLabel> nucleus_labels; // one per morpheme

  // Gold phrases with their resolved nuclei.
  std::vector<AccentPhrase> phrases() const;
  PitchSequence pitch() const;
};

struct AnnotatedCorpus {
  std::vector<AnnotatedSentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

// Corpus text format. Sentences are separated by blank lines:
//   #id <sentence-id>
//   <raw text>
//   surface \t pos \t pronunciation \t lexical_accent \t combination_type
//     \t conjugation_form \t conjugation_type \t word_type \t boundary(0/1)
//     \t nucleus_label \t polyphone_lemma|-
// Throws Error with kMissingField, kLabelOutOfRange, kDanglingBoundary,
// kSurfaceMismatch or kParse; messages carry "<source>:<line>".
AnnotatedCorpus read_corpus(std::istream& in,
                            std::string_view source = "<stream>");
AnnotatedCorpus load_corpus(const std::filesystem::path& path);

void write_corpus(std::ostream& out, const AnnotatedCorpus& corpus);
void save_corpus(const std::filesystem::path& path,
                 const AnnotatedCorpus& corpus);

// Deterministic split by position: every `stride`-th sentence (offset
// `phase`) goes to the second part.
std::pair<AnnotatedCorpus, AnnotatedCorpus> split_corpus(
    const AnnotatedCorpus& corpus, std::size_t stride, std::size_t phase = 0);

// Lemma -> candidate pronunciations, sorted and unique.
class CandidateInventory {
 public:
  void add(const std::string& lemma, const std::string& pronunciation);

  // Every polyphone target's gold pronunciation in the corpus.
  static CandidateInventory from_corpus(const AnnotatedCorpus& corpus);

  bool contains(std::string_view lemma) const;
  // Throws kUnknownLemma.
  const std::vector<std::string>& candidates(std::string_view lemma) const;
  const std::map<std::string, std::vector<std::string>, std::less<>>& lemmas()
      const {
    return lemmas_;
  }

  friend bool operator==(const CandidateInventory&,
                         const CandidateInventory&) = default;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> lemmas_;
};

}  // namespace jafront

#endif  // JAFRONT_CORPUS_H_
