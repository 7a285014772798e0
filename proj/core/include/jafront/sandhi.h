#ifndef JAFRONT_SANDHI_H_
#define JAFRONT_SANDHI_H_

#include <filesystem>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jafront/labels.h"
#include "jafront/text.h"

namespace jafront {

// Mora-count bucket shared by the rule table and the phonetic features:
// "0".."5", "6+".
std::string mora_bucket(std::size_t morae);

// One row of the accent-sandhi table. Fields equal to "*" match anything;
// pos_pair is "<left pos>+<right pos>" where either side may be "*"; a tag
// also matches its "-"-suffixed subtypes.
struct SandhiRule {
  std::string combination_type;
  std::string pos_pair;
  std::string mora_bucket;
  NucleusLabel outcome = NucleusLabel::keep();

  bool matches(const Morpheme& left, const Morpheme& right) const;
};

// Ordered rule list; the first match wins. A catch-all KEEP rule is appended
// when the table does not end with one.
class SandhiRuleTable {
 public:
  SandhiRuleTable();
  explicit SandhiRuleTable(std::vector<SandhiRule> rules);

  const std::vector<SandhiRule>& rules() const { return rules_; }
  const SandhiRule& match(const Morpheme& left, const Morpheme& right) const;

 private:
  std::vector<SandhiRule> rules_;
};

// TSV: combination_type, pos_pair, mora_bucket, outcome.
SandhiRuleTable read_sandhi_table(std::istream& in,
                                  std::string_view source = "<stream>");
SandhiRuleTable load_sandhi_table(const std::filesystem::path& path);

// Rule-based nucleus labels for the words of one phrase. Adjacent pairs are
// visited right to left; a matching non-KEEP rule gives the right word the
// rule's outcome (unless a pair further right already absorbed it) and
// flattens the left word.
std::vector<NucleusLabel> rule_sandhi(std::span<const Morpheme> words,
                                      const SandhiRuleTable& table);

// rule_sandhi applied to every phrase, one label per morpheme.
std::vector<NucleusLabel> rule_sandhi(const Sentence& sentence,
                                      const std::vector<AccentPhrase>& phrases,
                                      const SandhiRuleTable& table);

// POS-driven phrase-boundary baseline.
class RuleBoundaryModel {
 public:
  RuleBoundaryModel();

  // POS tags that open a phrase. A tag also matches its "-"-suffixed
  // subtypes ("noun" matches "noun-proper").
  void set_content_pos(std::vector<std::string> tags);
  void set_prefix_pos(std::string tag) { prefix_pos_ = std::move(tag); }
  // (left pos, right pos) pairs that never get a boundary between them.
  void add_exception(std::string left, std::string right);

  std::vector<bool> predict(const Sentence& sentence) const;

  static bool pos_matches(std::string_view pos, std::string_view tag);

 private:
  bool is_content(std::string_view pos) const;
  bool is_exception(std::string_view left, std::string_view right) const;

  std::vector<std::string> content_pos_;
  std::string prefix_pos_ = "prefix";
  std::vector<std::pair<std::string, std::string>> exceptions_;
};

// TSV of POS pairs, loaded as boundary exceptions into `model`.
void read_boundary_exceptions(std::istream& in, RuleBoundaryModel& model);
void load_boundary_exceptions(const std::filesystem::path& path,
                              RuleBoundaryModel& model);

}  // namespace jafront

#endif  // JAFRONT_SANDHI_H_
