#include "jafront/sandhi.h"

#include <fstream>
#include <sstream>

#include "jafront/error.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

bool field_matches(std::string_view pattern, std::string_view value) {
  return pattern == "*" || pattern == value;
}

bool is_catch_all(const SandhiRule& r) {
  return r.combination_type == "*" && r.pos_pair == "*" &&
         r.mora_bucket == "*";
}

}  // namespace

std::string mora_bucket(std::size_t morae) {
  return morae >= 6 ? "6+" : std::to_string(morae);
}

bool SandhiRule::matches(const Morpheme& left, const Morpheme& right) const {
  if (!field_matches(combination_type, right.accent_combination_type)) {
    return false;
  }
  if (!field_matches(mora_bucket, jafront::mora_bucket(right.mora_count()))) {
    return false;
  }
  if (pos_pair != "*") {
    const auto plus = pos_pair.find('+');
    if (plus == std::string::npos) return false;
    const std::string_view l = std::string_view(pos_pair).substr(0, plus);
    const std::string_view r = std::string_view(pos_pair).substr(plus + 1);
    if ((l != "*" && !RuleBoundaryModel::pos_matches(left.pos, l)) ||
        (r != "*" && !RuleBoundaryModel::pos_matches(right.pos, r))) {
      return false;
    }
  }
  return true;
}

SandhiRuleTable::SandhiRuleTable()
    : SandhiRuleTable(std::vector<SandhiRule>{}) {}

SandhiRuleTable::SandhiRuleTable(std::vector<SandhiRule> rules)
    : rules_(std::move(rules)) {
  if (rules_.empty() || !is_catch_all(rules_.back())) {
    rules_.push_back(SandhiRule{"*", "*", "*", NucleusLabel::keep()});
  }
}

const SandhiRule& SandhiRuleTable::match(const Morpheme& left,
                                         const Morpheme& right) const {
  for (const SandhiRule& r : rules_) {
    if (r.matches(left, right)) return r;
  }
  return rules_.back();
}

SandhiRuleTable read_sandhi_table(std::istream& in, std::string_view source) {
  std::vector<SandhiRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = utf8::split(line, '\t');
    if (f.size() < 4) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": expected 4 columns";
      throw Error(ErrorKind::kMissingField, msg.str());
    }
    rules.push_back(SandhiRule{f[0], f[1], f[2], NucleusLabel::parse(f[3])});
  }
  return SandhiRuleTable(std::move(rules));
}

SandhiRuleTable load_sandhi_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_sandhi_table(in, path.string());
}

std::vector<NucleusLabel> rule_sandhi(std::span<const Morpheme> words,
                                      const SandhiRuleTable& table) {
  std::vector<NucleusLabel> labels(words.size(), NucleusLabel::keep());
  // absorbed[i]: word i was flattened by a pair to its right.
  std::vector<bool> absorbed(words.size(), false);
  for (std::size_t i = words.size(); i-- > 1;) {
    const SandhiRule& rule = table.match(words[i - 1], words[i]);
    if (rule.outcome.is_keep()) continue;
    if (!absorbed[i]) labels[i] = rule.outcome;
    labels[i - 1] = NucleusLabel::flat();
    absorbed[i - 1] = true;
  }
  return labels;
}

std::vector<NucleusLabel> rule_sandhi(const Sentence& sentence,
                                      const std::vector<AccentPhrase>& phrases,
                                      const SandhiRuleTable& table) {
  check_partition(phrases, sentence.size());
  std::vector<NucleusLabel> out;
  out.reserve(sentence.size());
  const std::span<const Morpheme> all(sentence.morphemes);
  for (const AccentPhrase& p : phrases) {
    const auto part = rule_sandhi(all.subspan(p.begin, p.word_count()), table);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

RuleBoundaryModel::RuleBoundaryModel()
    : content_pos_{"noun", "pronoun", "verb", "adjective", "adverb"} {}

void RuleBoundaryModel::set_content_pos(std::vector<std::string> tags) {
  content_pos_ = std::move(tags);
}

void RuleBoundaryModel::add_exception(std::string left, std::string right) {
  exceptions_.emplace_back(std::move(left), std::move(right));
}

bool RuleBoundaryModel::pos_matches(std::string_view pos, std::string_view tag) {
  return pos == tag || (pos.size() > tag.size() && pos.substr(0, tag.size()) == tag &&
                        pos[tag.size()] == '-');
}

bool RuleBoundaryModel::is_content(std::string_view pos) const {
  for (const std::string& tag : content_pos_) {
    if (pos_matches(pos, tag)) return true;
  }
  return false;
}

bool RuleBoundaryModel::is_exception(std::string_view left,
                                     std::string_view right) const {
  for (const auto& [l, r] : exceptions_) {
    if (pos_matches(left, l) && pos_matches(right, r)) return true;
  }
  return false;
}

std::vector<bool> RuleBoundaryModel::predict(const Sentence& sentence) const {
  std::vector<bool> out(sentence.size(), false);
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i == 0) {
      out[i] = true;
      continue;
    }
    const std::string& pos = sentence.morphemes[i].pos;
    const std::string& prev = sentence.morphemes[i - 1].pos;
    out[i] = is_content(pos) && !pos_matches(prev, prefix_pos_) &&
             !is_exception(prev, pos);
  }
  return out;
}

void read_boundary_exceptions(std::istream& in, RuleBoundaryModel& model) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = utf8::split(line, '\t');
    if (f.size() < 2) {
      throw Error(ErrorKind::kMissingField,
                  "boundary exception line needs two POS tags: " + line);
    }
    model.add_exception(f[0], f[1]);
  }
}

void load_boundary_exceptions(const std::filesystem::path& path,
                              RuleBoundaryModel& model) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  read_boundary_exceptions(in, model);
}

}  // namespace jafront
