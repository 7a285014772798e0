#include "jafront/features.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include "jafront/error.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

std::string accent_bucket(int accent) {
  return accent >= 10 ? "10+" : std::to_string(accent);
}

std::string words_bucket(std::size_t words) {
  return words >= 6 ? "6+" : std::to_string(words);
}

std::string position_bucket(std::size_t index, std::size_t words) {
  if (words == 1) return "only";
  if (index == 0) return "first";
  if (index + 1 == words) return "last";
  return "middle";
}

}  // namespace

std::string_view field_name(FeatureField field) {
  switch (field) {
    case FeatureField::kPos: return "ef1.pos";
    case FeatureField::kConjugationForm: return "ef2.conjugation_form";
    case FeatureField::kConjugationType: return "ef2.conjugation_type";
    case FeatureField::kWordType: return "ef2.word_type";
    case FeatureField::kMoraCount: return "ef3.mora_count";
    case FeatureField::kFirstMora: return "ef3.first_mora";
    case FeatureField::kSecondMora: return "ef3.second_mora";
    case FeatureField::kLexicalAccent: return "ef4.lexical_accent";
    case FeatureField::kCombinationType: return "ef4.combination_type";
    case FeatureField::kPhraseWords: return "ef5.words_in_phrase";
    case FeatureField::kPhrasePosition: return "ef5.position_in_phrase";
    case FeatureField::kRuleLabel: return "ef6.rule_label";
    case FeatureField::kUnigram: return "ef7.unigram";
    case FeatureField::kBigram: return "ef7.bigram";
  }
  return "?";
}

int field_family(FeatureField field) {
  switch (field) {
    case FeatureField::kPos: return 1;
    case FeatureField::kConjugationForm:
    case FeatureField::kConjugationType:
    case FeatureField::kWordType: return 2;
    case FeatureField::kMoraCount:
    case FeatureField::kFirstMora:
    case FeatureField::kSecondMora: return 3;
    case FeatureField::kLexicalAccent:
    case FeatureField::kCombinationType: return 4;
    case FeatureField::kPhraseWords:
    case FeatureField::kPhrasePosition: return 5;
    case FeatureField::kRuleLabel: return 6;
    case FeatureField::kUnigram:
    case FeatureField::kBigram: return 7;
  }
  return 0;
}

FeatureSet::FeatureSet(std::vector<int> families)
    : families_(std::move(families)) {
  for (int f : families_) {
    if (f < 1 || f > 7) {
      throw Error(ErrorKind::kInvalidArgument,
                  "feature family " + std::to_string(f) + " outside 1..7");
    }
  }
  std::sort(families_.begin(), families_.end());
  families_.erase(std::unique(families_.begin(), families_.end()),
                  families_.end());
}

bool FeatureSet::has_family(int family) const {
  return std::binary_search(families_.begin(), families_.end(), family);
}

std::vector<FeatureField> FeatureSet::fields() const {
  std::vector<FeatureField> out;
  for (std::size_t i = 0; i < kFeatureFieldCount; ++i) {
    const auto f = static_cast<FeatureField>(i);
    if (has_family(field_family(f))) out.push_back(f);
  }
  return out;
}

int count_bucket(std::uint64_t count) {
  // floor(log2(1 + count)) == bit_width(1 + count) - 1
  const int b = static_cast<int>(std::bit_width(count + 1)) - 1;
  return std::min(7, b);
}

void NgramCounts::add_sentence(const std::vector<std::string>& surfaces) {
  std::string prev(kSentenceStart);
  for (const std::string& s : surfaces) {
    ++unigrams_[s];
    ++bigrams_[{prev, s}];
    prev = s;
  }
}

std::uint64_t NgramCounts::unigram(std::string_view surface) const {
  const auto it = unigrams_.find(surface);
  return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t NgramCounts::bigram(std::string_view prev,
                                  std::string_view surface) const {
  const auto it = bigrams_.find({std::string(prev), std::string(surface)});
  return it == bigrams_.end() ? 0 : it->second;
}

void NgramCounts::set_unigram(std::string surface, std::uint64_t count) {
  unigrams_[std::move(surface)] = count;
}

void NgramCounts::set_bigram(std::string prev, std::string surface,
                             std::uint64_t count) {
  bigrams_[{std::move(prev), std::move(surface)}] = count;
}

NgramCounts build_ngram_counts(std::istream& in, const Lexicon& lexicon,
                               const ConnectionMatrix& conn,
                               const TokenizerOptions& options) {
  NgramCounts counts;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> surfaces;
    std::istringstream chunks(line);
    std::string chunk;
    while (chunks >> chunk) {
      const Sentence s = tokenize(chunk, lexicon, conn, options);
      for (const Morpheme& m : s.morphemes) surfaces.push_back(m.surface);
    }
    if (!surfaces.empty()) counts.add_sentence(surfaces);
  }
  return counts;
}

NgramCounts build_ngram_counts(const std::filesystem::path& path,
                               const Lexicon& lexicon,
                               const ConnectionMatrix& conn,
                               const TokenizerOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return build_ngram_counts(in, lexicon, conn, options);
}

void write_ngram_counts(std::ostream& out, const NgramCounts& counts) {
  for (const auto& [s, c] : counts.unigrams()) out << s << '\t' << c << '\n';
  for (const auto& [pair, c] : counts.bigrams()) {
    out << pair.first << '\t' << pair.second << '\t' << c << '\n';
  }
}

NgramCounts read_ngram_counts(std::istream& in) {
  NgramCounts counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = utf8::split(line, '\t');
    try {
      if (f.size() == 2) {
        counts.set_unigram(f[0], std::stoull(f[1]));
      } else if (f.size() == 3) {
        counts.set_bigram(f[0], f[1], std::stoull(f[2]));
      } else {
        throw Error(ErrorKind::kParse, "expected 2 or 3 columns");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kParse,
                  "n-gram line " + std::to_string(line_no) + ": bad count");
    }
  }
  return counts;
}

void save_ngram_counts(const std::filesystem::path& path,
                       const NgramCounts& counts) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write_ngram_counts(out, counts);
}

NgramCounts load_ngram_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_ngram_counts(in);
}

std::vector<FeatureBundle> extract_features(
    const Sentence& sentence, const std::vector<AccentPhrase>* phrases,
    const FeatureContext& context) {
  const std::size_t n = sentence.size();
  std::vector<FeatureBundle> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Morpheme& m = sentence.morphemes[i];
    FeatureBundle& b = out[i];
    b[FeatureField::kPos] = m.pos;
    b[FeatureField::kConjugationForm] = m.conjugation_form;
    b[FeatureField::kConjugationType] = m.conjugation_type;
    b[FeatureField::kWordType] = m.word_type;
    b[FeatureField::kMoraCount] = mora_bucket(m.mora_count());
    b[FeatureField::kFirstMora] = m.morae.size() > 0 ? m.morae[0].text : "-";
    b[FeatureField::kSecondMora] = m.morae.size() > 1 ? m.morae[1].text : "-";
    b[FeatureField::kLexicalAccent] = accent_bucket(m.lexical_accent);
    b[FeatureField::kCombinationType] = m.accent_combination_type;
    b[FeatureField::kPhraseWords] = std::string(kNaSymbol);
    b[FeatureField::kPhrasePosition] = std::string(kNaSymbol);
    b[FeatureField::kRuleLabel] = std::string(kNaSymbol);
    if (context.ngrams) {
      const std::string_view prev =
          i == 0 ? kSentenceStart : std::string_view(sentence.morphemes[i - 1].surface);
      b[FeatureField::kUnigram] =
          std::to_string(count_bucket(context.ngrams->unigram(m.surface)));
      b[FeatureField::kBigram] =
          std::to_string(count_bucket(context.ngrams->bigram(prev, m.surface)));
    } else {
      b[FeatureField::kUnigram] = std::string(kNaSymbol);
      b[FeatureField::kBigram] = std::string(kNaSymbol);
    }
  }
  if (phrases) {
    check_partition(*phrases, n);
    for (const AccentPhrase& p : *phrases) {
      for (std::size_t i = p.begin; i < p.end; ++i) {
        out[i][FeatureField::kPhraseWords] = words_bucket(p.word_count());
        out[i][FeatureField::kPhrasePosition] =
            position_bucket(i - p.begin, p.word_count());
      }
    }
    if (context.rules) {
      const std::vector<NucleusLabel> rule =
          rule_sandhi(sentence, *phrases, *context.rules);
      for (std::size_t i = 0; i < n; ++i) {
        out[i][FeatureField::kRuleLabel] = rule[i].to_string();
      }
    }
  }
  return out;
}

void FeatureVocabulary::fit(
    const std::vector<std::vector<FeatureBundle>>& sentences) {
  std::array<std::set<std::string>, kFeatureFieldCount> seen;
  for (const auto& bundles : sentences) {
    for (const FeatureBundle& b : bundles) {
      for (std::size_t f = 0; f < kFeatureFieldCount; ++f) {
        seen[f].insert(b.values[f]);
      }
    }
  }
  for (std::size_t f = 0; f < kFeatureFieldCount; ++f) {
    maps_[f].clear();
    maps_[f].emplace(std::string(kUnkSymbol), 0);
    std::size_t next = 1;
    for (const std::string& s : seen[f]) {
      if (s == kUnkSymbol) continue;
      maps_[f].emplace(s, next++);
    }
  }
  fitted_ = true;
}

void FeatureVocabulary::assign(
    std::array<std::map<std::string, std::size_t, std::less<>>,
               kFeatureFieldCount>
        maps) {
  maps_ = std::move(maps);
  fitted_ = true;
}

std::size_t FeatureVocabulary::size(FeatureField field) const {
  if (!fitted_) {
    throw Error(ErrorKind::kLookupBeforeFit, "feature vocabulary not fitted");
  }
  return maps_[static_cast<std::size_t>(field)].size();
}

std::size_t FeatureVocabulary::index(FeatureField field,
                                     std::string_view symbol) const {
  if (!fitted_) {
    throw Error(ErrorKind::kLookupBeforeFit, "feature vocabulary not fitted");
  }
  const auto& map = maps_[static_cast<std::size_t>(field)];
  const auto it = map.find(symbol);
  return it == map.end() ? 0 : it->second;
}

FieldIndices FeatureVocabulary::lookup(const FeatureBundle& bundle) const {
  FieldIndices out{};
  for (std::size_t f = 0; f < kFeatureFieldCount; ++f) {
    out[f] = index(static_cast<FeatureField>(f), bundle.values[f]);
  }
  return out;
}

FeatureVocabulary fit_vocabulary(const AnnotatedCorpus& corpus,
                                 const FeatureContext& context) {
  if (corpus.empty()) {
    throw Error(ErrorKind::kEmptySplit, "cannot fit a vocabulary on no data");
  }
  std::vector<std::vector<FeatureBundle>> all;
  all.reserve(corpus.size());
  for (const AnnotatedSentence& s : corpus.sentences) {
    const std::vector<AccentPhrase> phrases = s.phrases();
    all.push_back(extract_features(s.sentence, &phrases, context));
  }
  FeatureVocabulary vocab;
  vocab.fit(all);
  return vocab;
}

}  // namespace jafront
