#include <gtest/gtest.h>

#include <sstream>

#include "builders.h"
#include "jafront/error.h"
#include "jafront/predictors.h"
#include "jafront/sandhi.h"

namespace jafront {
namespace {

using testing_support::sentence;
using testing_support::word;

const NucleusLabel K = NucleusLabel::keep();
const NucleusLabel F = NucleusLabel::flat();

TEST(RuleSandhi, EmptyPhrase) {
  EXPECT_TRUE(rule_sandhi(std::span<const Morpheme>{}, SandhiRuleTable{}).empty());
}

TEST(RuleSandhi, SingleWordKeeps) {
  const Sentence s = sentence({word("花", "noun", "ハナ", 2)});
  EXPECT_EQ(rule_sandhi(s.morphemes, SandhiRuleTable{}), (std::vector<NucleusLabel>{K}));
}

TEST(RuleSandhi, ToyTableOnCompound) {
  const SandhiRuleTable table({{"C1", "*", "3", NucleusLabel::nucleus(1)}});
  const Sentence s = sentence({word("京都", "noun-proper", "キョート", 1, "C3"),
                               word("タワー", "noun", "タワー", 1, "C1")});
  EXPECT_EQ(rule_sandhi(s.morphemes, table),
            (std::vector<NucleusLabel>{F, NucleusLabel::nucleus(1)}));
  // Same pair but a 2-mora right word misses the bucket.
  const Sentence t = sentence({word("京都", "noun-proper", "キョート", 1, "C3"),
                               word("タワ", "noun", "タワ", 1, "C1")});
  EXPECT_EQ(rule_sandhi(t.morphemes, table), (std::vector<NucleusLabel>{K, K}));
}

TEST(RuleSandhi, RightmostPairAbsorbsFirst) {
  const SandhiRuleTable table({{"C1", "noun+noun", "*", NucleusLabel::nucleus(1)}});
  const Sentence s = sentence({word("a", "noun", "ア", 1, "C1"), word("b", "noun", "イ", 1, "C1"),
                               word("c", "noun", "ウ", 1, "C1")});
  EXPECT_EQ(rule_sandhi(s.morphemes, table),
            (std::vector<NucleusLabel>{F, F, NucleusLabel::nucleus(1)}));
}

TEST(RuleSandhi, FirstMatchingRuleWins) {
  const SandhiRuleTable table({{"C2", "*", "*", F}, {"C2", "noun+noun", "*", NucleusLabel::nucleus(1)}});
  const Sentence s = sentence({word("a", "noun", "アイ", 1), word("b", "noun", "ウエ", 1, "C2")});
  EXPECT_EQ(rule_sandhi(s.morphemes, table), (std::vector<NucleusLabel>{F, F}));
}

TEST(RuleSandhi, PosPairMatchesSubtypes) {
  const SandhiRuleTable table({{"*", "prefix+noun", "*", F}});
  const Sentence s = sentence({word("新", "prefix", "シン"), word("大阪", "noun-proper", "オーサカ", 0)});
  EXPECT_EQ(rule_sandhi(s.morphemes, table), (std::vector<NucleusLabel>{F, F}));
}

TEST(RuleSandhi, PerPhraseOverSentence) {
  const auto toy = testing_support::ToyData::load();
  const AnnotatedSentence& kyoto = toy.corpus.sentences.front();
  const auto labels = rule_sandhi(kyoto.sentence, kyoto.phrases(), toy.rules);
  ASSERT_EQ(labels.size(), kyoto.sentence.size());
  EXPECT_EQ(labels[0], F);
  EXPECT_EQ(labels[1], NucleusLabel::nucleus(1));
}

TEST(SandhiTable, DefaultRuleAppendedAndParsed) {
  std::istringstream in("# header\nC1\tnoun+noun\t*\tNUC1\n");
  const SandhiRuleTable t = read_sandhi_table(in);
  ASSERT_EQ(t.rules().size(), 2u);
  EXPECT_EQ(t.rules().back().outcome, K);
  std::istringstream bad("C1\tnoun+noun\n");
  EXPECT_THROW(read_sandhi_table(bad), Error);
}

struct Case {
  std::vector<std::pair<std::string, std::string>> words;  // surface, pos
  std::vector<bool> expected;
};

Sentence from_case(const Case& c) {
  std::vector<Morpheme> words;
  for (const auto& [s, p] : c.words) words.push_back(word(s, p, "ア"));
  return sentence(words);
}

TEST(RuleApbp, NounParticleAndVerbNoun) {
  RuleBoundaryModel rules;
  EXPECT_EQ(rule_apbp(from_case({{{"花", "noun"}, {"が", "particle"}}, {}}), rules),
            (std::vector<bool>{true, false}));
  EXPECT_EQ(rule_apbp(from_case({{{"読む", "verb"}, {"本", "noun"}}, {}}), rules),
            (std::vector<bool>{true, true}));
}

TEST(RuleApbp, TenHandAnnotatedSentences) {
  RuleBoundaryModel rules;
  rules.add_exception("noun-proper", "noun");
  const std::vector<Case> cases = {
      {{{"京都", "noun-proper"}, {"タワー", "noun"}, {"上空", "noun"}, {"の", "particle"},
        {"方", "noun"}, {"に", "particle"}, {"雲", "noun"}, {"が", "particle"}, {"ある", "verb"}},
       {true, false, true, false, true, false, true, false, true}},
      {{{"辛い", "adjective"}, {"過去", "noun"}, {"も", "particle"}, {"忘れる", "verb"}},
       {true, true, false, true}},
      {{{"駅", "noun"}, {"の", "particle"}, {"方", "noun"}, {"へ", "particle"}, {"行く", "verb"}},
       {true, false, true, false, true}},
      {{{"お", "prefix"}, {"茶", "noun"}, {"を", "particle"}, {"飲む", "verb"}},
       {true, false, false, true}},
      {{{"食べ", "verb"}, {"た", "auxiliary"}}, {true, false}},
      {{{"とても", "adverb"}, {"高い", "adjective"}, {"山", "noun"}}, {true, true, true}},
      {{{"花", "noun"}}, {true}},
      {{{"東京", "noun-proper"}, {"駅", "noun"}, {"で", "particle"}, {"待ち", "verb"},
        {"ます", "auxiliary"}},
       {true, false, false, true, false}},
      {{{"彼", "pronoun"}, {"は", "particle"}, {"大阪", "noun-proper"}, {"へ", "particle"},
        {"行く", "verb"}},
       {true, false, true, false, true}},
      {{{"新", "prefix"}, {"大阪", "noun-proper"}, {"駅", "noun"}, {"から", "particle"},
        {"歩く", "verb"}},
       {true, false, false, false, true}},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(rule_apbp(from_case(cases[i]), rules), cases[i].expected) << "case " << i + 1;
  }
}

TEST(RuleApbp, KyotoTowerSentenceFromToyCorpus) {
  const auto toy = testing_support::ToyData::load();
  const AnnotatedSentence& kyoto = toy.corpus.sentences.front();
  const auto b = rule_apbp(kyoto.sentence, toy.boundaries);
  EXPECT_FALSE(b[1]);  // 京都|タワー
  EXPECT_TRUE(b[2]);   // タワー|上空
  EXPECT_EQ(b, kyoto.boundaries);
}

TEST(RuleApbp, EmptySentence) {
  EXPECT_TRUE(rule_apbp(Sentence{}, RuleBoundaryModel{}).empty());
}

}  // namespace
}  // namespace jafront
