#include <gtest/gtest.h>

#include <sstream>

#include "builders.h"
#include "jafront/corpus.h"
#include "jafront/error.h"

namespace jafront {
namespace {

const char* const kTwoSentences =
    "#id a1\n"
    "花が咲く\n"
    "花\tnoun\tハナ\t2\tC3\t*\t*\t和\t1\tKEEP\t-\n"
    "が\tparticle\tガ\t0\tP\t*\t*\t和\t0\tKEEP\t-\n"
    "咲く\tverb\tサク\t0\tV\t終止形\t五段\t和\t1\tKEEP\t-\n"
    "\n"
    "#id a2\n"
    "方\n"
    "方\tnoun\tカタ\t2\tC3\t*\t*\t和\t1\tNUC1\t方\n";

ErrorKind kind_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_corpus(in, "t.txt");
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorKind::kInvalidArgument;
}

TEST(Corpus, ReadsWellFormedFile) {
  std::istringstream in(kTwoSentences);
  const AnnotatedCorpus c = read_corpus(in);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.sentences[0].sentence.id, "a1");
  EXPECT_EQ(c.sentences[0].sentence.size(), 3u);
  EXPECT_EQ(c.sentences[0].boundaries, (std::vector<bool>{true, false, true}));
  EXPECT_TRUE(c.sentences[1].sentence.morphemes[0].is_polyphone_target);
  EXPECT_EQ(c.sentences[1].sentence.morphemes[0].polyphone_lemma, "方");
  EXPECT_EQ(c.sentences[1].nucleus_labels[0], NucleusLabel::nucleus(1));
}

TEST(Corpus, WriterReaderRoundTrip) {
  std::istringstream in(kTwoSentences);
  const AnnotatedCorpus c = read_corpus(in);
  std::ostringstream out;
  write_corpus(out, c);
  std::istringstream again(out.str());
  const AnnotatedCorpus d = read_corpus(again);
  std::ostringstream out2;
  write_corpus(out2, d);
  EXPECT_EQ(out.str(), out2.str());
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.sentences[0].phrases(), c.sentences[0].phrases());
}

TEST(Corpus, EmptyFileIsEmptyCorpus) {
  std::istringstream in("");
  EXPECT_TRUE(read_corpus(in).empty());
}

TEST(Corpus, NucleusBeyondWordIsOutOfRangeWithLine) {
  std::istringstream in(
      "#id x\n"
      "雲\n"
      "雲\tnoun\tクモリ\t1\tC3\t*\t*\t和\t1\tNUC5\t-\n");
  try {
    read_corpus(in, "bad.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLabelOutOfRange);
    EXPECT_NE(std::string(e.what()).find("bad.txt:3"), std::string::npos);
  }
}

TEST(Corpus, MissingColumnsAndHeader) {
  EXPECT_EQ(kind_of("#id x\n雲\n雲\tnoun\tクモ\n"), ErrorKind::kMissingField);
  EXPECT_EQ(kind_of("雲\n雲\tnoun\tクモ\t1\tC3\t*\t*\t和\t1\tKEEP\t-\n"),
            ErrorKind::kMissingField);
  EXPECT_EQ(kind_of("#id x\n"), ErrorKind::kMissingField);
}

TEST(Corpus, FirstWordMustOpenAPhrase) {
  EXPECT_EQ(kind_of("#id x\n雲\n雲\tnoun\tクモ\t1\tC3\t*\t*\t和\t0\tKEEP\t-\n"),
            ErrorKind::kDanglingBoundary);
  EXPECT_EQ(kind_of("#id x\n雲\n雲\tnoun\tクモ\t1\tC3\t*\t*\t和\t2\tKEEP\t-\n"),
            ErrorKind::kDanglingBoundary);
}

TEST(Corpus, SurfacesMustSpellRawText) {
  EXPECT_EQ(kind_of("#id x\n雨\n雲\tnoun\tクモ\t1\tC3\t*\t*\t和\t1\tKEEP\t-\n"),
            ErrorKind::kSurfaceMismatch);
}

TEST(Corpus, BadPronunciationAndLabel) {
  EXPECT_EQ(kind_of("#id x\n雲\n雲\tnoun\tくも\t1\tC3\t*\t*\t和\t1\tKEEP\t-\n"),
            ErrorKind::kInvalidPronunciation);
  EXPECT_EQ(kind_of("#id x\n雲\n雲\tnoun\tクモ\t1\tC3\t*\t*\t和\t1\tHIGH\t-\n"),
            ErrorKind::kParse);
}

TEST(Corpus, MissingFileIsIoError) {
  try {
    load_corpus("/nonexistent/corpus.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/corpus.txt"), std::string::npos);
  }
}

TEST(ToyCorpus, HasFiftySentencesWithConsistentAnnotation) {
  const auto toy = testing_support::ToyData::load();
  ASSERT_EQ(toy.corpus.size(), 50u);
  for (const auto& s : toy.corpus.sentences) {
    ASSERT_EQ(s.boundaries.size(), s.sentence.size());
    ASSERT_EQ(s.nucleus_labels.size(), s.sentence.size());
    EXPECT_TRUE(s.boundaries.front());
    const auto phrases = s.phrases();
    EXPECT_NO_THROW(check_partition(phrases, s.sentence.size()));
    EXPECT_EQ(s.pitch().labels.size(), s.sentence.mora_count());
  }
}

TEST(ToyCorpus, KyotoTowerSentencePhrases) {
  const auto toy = testing_support::ToyData::load();
  const AnnotatedSentence& s = toy.corpus.sentences.front();
  EXPECT_EQ(s.sentence.id, "toy01");
  const auto phrases = s.phrases();
  ASSERT_GE(phrases.size(), 2u);
  // 京都タワー is one phrase with the nucleus on タ.
  EXPECT_EQ(phrases[0], (AccentPhrase{0, 2, 4}));
  EXPECT_EQ(phrases[1].begin, 2u);
}

TEST(Inventory, CollectsPolyphoneReadings) {
  const auto toy = testing_support::ToyData::load();
  const auto inv = CandidateInventory::from_corpus(toy.corpus);
  EXPECT_EQ(inv.candidates("方"), (std::vector<std::string>{"カタ", "ホー"}));
  EXPECT_EQ(inv.candidates("辛い"), (std::vector<std::string>{"カライ", "ツライ"}));
  EXPECT_FALSE(inv.contains("雲"));
  EXPECT_THROW(inv.candidates("雲"), Error);
}

TEST(Split, EveryStrideGoesToSecondPart) {
  const auto toy = testing_support::ToyData::load();
  const auto [train, held] = split_corpus(toy.corpus, 5, 0);
  EXPECT_EQ(train.size() + held.size(), 50u);
  EXPECT_EQ(held.size(), 10u);
  EXPECT_EQ(held.sentences[0].sentence.id, "toy01");
  EXPECT_THROW(split_corpus(toy.corpus, 0), Error);
}

}  // namespace
}  // namespace jafront
