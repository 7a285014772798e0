#ifndef JAFRONT_FEATURES_H_
#define JAFRONT_FEATURES_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jafront/corpus.h"
#include "jafront/lexicon.h"
#include "jafront/sandhi.h"
#include "jafront/text.h"
#include "jafront/tokenizer.h"

namespace jafront {

// Categorical fields of the explicit feature families EF1..EF7.
enum class FeatureField : std::size_t {
  kPos,               // EF1
  kConjugationForm,   // EF2
  kConjugationType,   // EF2
  kWordType,          // EF2
  kMoraCount,         // EF3
  kFirstMora,         // EF3
  kSecondMora,        // EF3
  kLexicalAccent,     // EF4
  kCombinationType,   // EF4
  kPhraseWords,       // EF5
  kPhrasePosition,    // EF5
  kRuleLabel,         // EF6
  kUnigram,           // EF7
  kBigram,            // EF7
};

inline constexpr std::size_t kFeatureFieldCount = 14;

std::string_view field_name(FeatureField field);
// Family number 1..7.
int field_family(FeatureField field);

inline constexpr std::string_view kNaSymbol = "<NA>";
inline constexpr std::string_view kUnkSymbol = "<UNK>";

struct FeatureBundle {
  std::array<std::string, kFeatureFieldCount> values;

  std::string& operator[](FeatureField f) {
    return values[static_cast<std::size_t>(f)];
  }
  const std::string& operator[](FeatureField f) const {
    return values[static_cast<std::size_t>(f)];
  }
};

// Which families a task head consumes.
class FeatureSet {
 public:
  FeatureSet() = default;
  explicit FeatureSet(std::vector<int> families);

  static FeatureSet none() { return FeatureSet(); }
  static FeatureSet pd() { return FeatureSet({1}); }
  static FeatureSet apbp(bool with_ngrams) {
    return with_ngrams ? FeatureSet({1, 2, 3, 4, 7}) : FeatureSet({1, 2, 3, 4});
  }
  static FeatureSet anpp() { return FeatureSet({1, 2, 3, 4, 5, 6}); }

  bool has_family(int family) const;
  const std::vector<int>& families() const { return families_; }
  std::vector<FeatureField> fields() const;
  bool empty() const { return families_.empty(); }

 private:
  std::vector<int> families_;
};

// log2 bucket of a count: min(7, floor(log2(1 + count))).
int count_bucket(std::uint64_t count);

class NgramCounts {
 public:
  void add_sentence(const std::vector<std::string>& surfaces);

  std::uint64_t unigram(std::string_view surface) const;
  // `prev` is "<s>" at the start of a line.
  std::uint64_t bigram(std::string_view prev, std::string_view surface) const;

  const std::map<std::string, std::uint64_t, std::less<>>& unigrams() const {
    return unigrams_;
  }
  const std::map<std::pair<std::string, std::string>, std::uint64_t>&
  bigrams() const {
    return bigrams_;
  }

  void set_unigram(std::string surface, std::uint64_t count);
  void set_bigram(std::string prev, std::string surface, std::uint64_t count);

  friend bool operator==(const NgramCounts&, const NgramCounts&) = default;

 private:
  std::map<std::string, std::uint64_t, std::less<>> unigrams_;
  std::map<std::pair<std::string, std::string>, std::uint64_t> bigrams_;
};

inline constexpr std::string_view kSentenceStart = "<s>";

// Tokenizes every whitespace-separated chunk of every line and counts
// surface unigrams and adjacent pairs within the line.
NgramCounts build_ngram_counts(std::istream& in, const Lexicon& lexicon,
                               const ConnectionMatrix& conn,
                               const TokenizerOptions& options = {});
NgramCounts build_ngram_counts(const std::filesystem::path& path,
                               const Lexicon& lexicon,
                               const ConnectionMatrix& conn,
                               const TokenizerOptions& options = {});

// TSV lines "token\tcount" (unigram) and "token\ttoken\tcount" (bigram).
void write_ngram_counts(std::ostream& out, const NgramCounts& counts);
NgramCounts read_ngram_counts(std::istream& in);
void save_ngram_counts(const std::filesystem::path& path,
                       const NgramCounts& counts);
NgramCounts load_ngram_counts(const std::filesystem::path& path);

// Optional resources used by the phrase, rule and n-gram families.
struct FeatureContext {
  const SandhiRuleTable* rules = nullptr;
  const NgramCounts* ngrams = nullptr;
};

// One bundle per morpheme. EF5 needs `phrases`, EF6 needs `phrases` and
// context.rules, EF7 needs context.ngrams; absent prerequisites yield <NA>.
std::vector<FeatureBundle> extract_features(
    const Sentence& sentence, const std::vector<AccentPhrase>* phrases,
    const FeatureContext& context);

using FieldIndices = std::array<std::size_t, kFeatureFieldCount>;

// Per-field symbol tables. Index 0 is <UNK> in every field; observed symbols
// take 1..n in lexicographic order.
class FeatureVocabulary {
 public:
  void fit(const std::vector<std::vector<FeatureBundle>>& sentences);

  bool fitted() const { return fitted_; }
  std::size_t size(FeatureField field) const;
  std::size_t index(FeatureField field, std::string_view symbol) const;
  // Throws kLookupBeforeFit before fit().
  FieldIndices lookup(const FeatureBundle& bundle) const;

  const std::map<std::string, std::size_t, std::less<>>& symbols(
      FeatureField field) const {
    return maps_[static_cast<std::size_t>(field)];
  }
  // For deserialization: installs field maps directly.
  void assign(std::array<std::map<std::string, std::size_t, std::less<>>,
                         kFeatureFieldCount> maps);

  friend bool operator==(const FeatureVocabulary&,
                         const FeatureVocabulary&) = default;

 private:
  std::array<std::map<std::string, std::size_t, std::less<>>,
             kFeatureFieldCount>
      maps_;
  bool fitted_ = false;
};

// Extracts features for every corpus sentence with its gold phrases and fits
// a vocabulary. Throws kEmptySplit on an empty corpus.
FeatureVocabulary fit_vocabulary(const AnnotatedCorpus& corpus,
                                 const FeatureContext& context);

}  // namespace jafront

#endif  // JAFRONT_FEATURES_H_
