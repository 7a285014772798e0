#include <gtest/gtest.h>

#include <filesystem>

#include "builders.h"
#include "jafront/charlm.h"

namespace jafront {
namespace {

using testing_support::sentence;
using testing_support::word;

std::vector<std::string> toy_lines() {
  return {"きょうとたわーのうえ", "からいかれーをたべる", "つらいかこもわすれる",
          "えきのほうへいく", "やりかたをならう", "はながさく", "くもがある",
          "きょうとのほうにいく", "かれーはからい", "わすれるのはつらい",
          "たわーがみえる", "あめがふる", "ほうがくをしる", "かたをたたく",
          "そらがあおい", "うみへいく", "やまにのぼる", "ほしがひかる",
          "かぜがふく", "ゆきがふる"};
}

TEST(CharVocabulary, SpecialsPlusCharacters) {
  const CharVocabulary v = CharVocabulary::build({"あいう"});
  EXPECT_EQ(v.size(), 3u + 3u);
  EXPECT_EQ(v.index("あ") >= 3, true);
  EXPECT_EQ(v.index("ん"), CharVocabulary::kUnk);
  EXPECT_EQ(CharVocabulary().size(), 3u);
}

TEST(CharLm, EmbedShape) {
  CharLm lm(CharVocabulary::build({"あいう"}), 4, 5);
  lm.init(3);
  const auto m = lm.embed(sentence({word("あい", "noun", "アイ")}));
  EXPECT_EQ(m.rows(), 1u);
  EXPECT_EQ(m.cols(), 10u);
  EXPECT_EQ(lm.embed(Sentence{}).rows(), 0u);
}

TEST(CharLm, ForwardHalfDependsOnlyOnPrefix) {
  CharLm lm(CharVocabulary::build(toy_lines()), 8, 6);
  lm.init(5);
  const Sentence a = sentence({word("きょう", "noun", "キョー"), word("と", "noun", "ト"),
                               word("たわー", "noun", "タワー")});
  const Sentence b = sentence({word("きょう", "noun", "キョー"), word("と", "noun", "ト"),
                               word("かれー", "noun", "カレー")});
  const auto ea = lm.embed(a);
  const auto eb = lm.embed(b);
  const std::size_t h = lm.hidden_dim();
  for (std::size_t row = 0; row < 2; ++row) {
    for (std::size_t j = 0; j < h; ++j) EXPECT_EQ(ea(row, j), eb(row, j));
  }
  bool differs = false;
  for (std::size_t j = 0; j < h; ++j) differs |= ea(2, j) != eb(2, j);
  EXPECT_TRUE(differs);
}

TEST(CharLm, ZeroModelIsDeterministic) {
  CharLm lm(CharVocabulary::build({"あいう"}), 4, 3);
  for (auto* p : lm.params()) p->value.fill(0.0f);
  const auto m = lm.embed(sentence({word("あ", "noun", "ア"), word("いう", "noun", "イウ")}));
  // With all-zero weights every gate is 0.5 and the candidate is 0.
  for (float v : m.values()) EXPECT_EQ(v, 0.0f);
  EXPECT_EQ(m, lm.embed(sentence({word("あ", "noun", "ア"), word("いう", "noun", "イウ")})));
}

TEST(CharLm, UnknownCharactersMapToUnk) {
  CharLm lm(CharVocabulary::build({"あいう"}), 4, 3);
  lm.init(1);
  EXPECT_EQ(lm.embed(sentence({word("ん", "noun", "ン")})),
            lm.embed(sentence({word("ゑ", "noun", "ヱ")})));
}

TEST(TrainCharLm, PerplexityDecreases) {
  CharLmConfig cfg;
  cfg.hidden = 16;
  cfg.embedding_dim = 8;
  cfg.epochs = 50;
  cfg.learning_rate = 0.5;
  cfg.seed = 3;
  std::vector<std::string> lines = toy_lines();
  std::size_t chars = 0;
  for (const auto& l : lines) chars += l.size() / 3;
  ASSERT_GE(chars, 100u);
  CharLmHistory history;
  const CharLm lm = train_charlm(lines, cfg, &history);
  ASSERT_EQ(history.perplexity.size(), 50u);
  EXPECT_LT(history.perplexity.back(), history.initial_perplexity);
  EXPECT_LT(lm.perplexity(lines), history.initial_perplexity);
}

TEST(TrainCharLm, SameSeedSameParameters) {
  CharLmConfig cfg;
  cfg.hidden = 8;
  cfg.embedding_dim = 4;
  cfg.epochs = 3;
  const CharLm a = train_charlm(toy_lines(), cfg);
  const CharLm b = train_charlm(toy_lines(), cfg);
  const auto pa = a.params();
  const auto pb = b.params();
  ASSERT_EQ(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i]->value, pb[i]->value);
  EXPECT_THROW(train_charlm({}, cfg), Error);
}

TEST(CharLm, SaveLoadRoundTrip) {
  CharLmConfig cfg;
  cfg.hidden = 8;
  cfg.embedding_dim = 4;
  cfg.epochs = 1;
  const CharLm lm = train_charlm(toy_lines(), cfg);
  const auto path = std::filesystem::temp_directory_path() / "jafront_charlm_test.bin";
  lm.save(path);
  const CharLm back = CharLm::load(path);
  std::filesystem::remove(path);
  const Sentence s = sentence({word("きょう", "noun", "キョー"), word("と", "noun", "ト")});
  EXPECT_EQ(lm.embed(s), back.embed(s));
  EXPECT_EQ(back.vocabulary().symbols(), lm.vocabulary().symbols());
}

}  // namespace
}  // namespace jafront
