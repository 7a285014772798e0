#include <gtest/gtest.h>

#include <sstream>

#include "builders.h"
#include "jafront/error.h"
#include "jafront/evaluation.h"
#include "jafront/nn/rng.h"

namespace jafront {
namespace {

using testing_support::sentence;
using testing_support::word;

PitchSequence pitch(const std::string& s) {
  PitchSequence p;
  for (char c : s) p.labels.push_back(c == 'H' ? Pitch::kHigh : Pitch::kLow);
  return p;
}

TEST(PdAccuracy, Examples) {
  EXPECT_EQ(pd_accuracy({"ホー", "カタ"}, {"ホー", "カタ"}), 1.0);
  EXPECT_EQ(pd_accuracy({"a", "b", "c", "x"}, {"a", "b", "c", "d"}), 0.75);
  EXPECT_FALSE(pd_accuracy({}, {}).has_value());
  try {
    pd_accuracy({"a"}, {"a", "b"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlignmentMismatch);
  }
}

TEST(ApbpF1, PerfectPrediction) {
  const std::vector<std::vector<bool>> gold = {{true, false, true}};
  EXPECT_EQ(apbp_f1(gold, gold), 1.0);
}

TEST(ApbpF1, WorkedExample) {
  const std::vector<std::vector<bool>> gold = {{true, true, false, true}};
  const std::vector<std::vector<bool>> pred = {{true, true, true, true}};
  const F1Counts c = apbp_counts(pred, gold);
  EXPECT_EQ(c.tp, 2u);
  EXPECT_EQ(c.fp, 1u);
  EXPECT_EQ(c.fn, 0u);
  EXPECT_NEAR(*c.precision(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(*c.recall(), 1.0, 1e-12);
  EXPECT_NEAR(*apbp_f1(pred, gold), 0.8, 1e-12);
}

TEST(ApbpF1, PositionZeroIgnoredAndNoPositivesAbsent) {
  const std::vector<std::vector<bool>> gold = {{true, false}};
  const std::vector<std::vector<bool>> pred = {{false, false}};
  EXPECT_FALSE(apbp_f1(pred, gold).has_value());
  EXPECT_THROW(apbp_f1({{true}}, {{true, false}}), Error);
}

TEST(ApbpF1, AdjacentNounSubsetCountsOnlyNounNounSlots) {
  // noun noun | verb noun | noun-proper noun | particle
  const Sentence s = sentence({word("a", "noun", "ア"), word("b", "noun", "イ"),
                               word("c", "verb", "ウ"), word("d", "noun", "エ"),
                               word("e", "noun-proper", "オ"), word("f", "noun", "カ"),
                               word("g", "particle", "キ")});
  const std::vector<std::vector<bool>> gold = {{true, true, true, true, true, false, false}};
  const std::vector<std::vector<bool>> pred = {{true, false, true, true, false, true, true}};
  const std::vector<Sentence> sents = {s};
  // Noun-noun slots by hand: 1 (a|b), 4 (d|e), 5 (e|f).
  // slot 1: gold 1, pred 0 -> fn; slot 4: gold 1, pred 0 -> fn; slot 5: gold 0, pred 1 -> fp.
  const F1Counts c = apbp_counts(pred, gold, BoundarySubset::kAdjacentNouns, &sents);
  EXPECT_EQ(c.tp, 0u);
  EXPECT_EQ(c.fp, 1u);
  EXPECT_EQ(c.fn, 2u);
  EXPECT_EQ(apbp_f1(pred, gold, BoundarySubset::kAdjacentNouns, &sents), 0.0);
  // All slots: 2 (b|c) tp, 3 (c|d) tp, 6 fp, plus the three above.
  const F1Counts all = apbp_counts(pred, gold);
  EXPECT_EQ(all.tp, 2u);
  EXPECT_EQ(all.fp, 2u);
  EXPECT_EQ(all.fn, 2u);
  EXPECT_THROW(apbp_counts(pred, gold, BoundarySubset::kAdjacentNouns, nullptr), Error);
}

TEST(ApbpF1, TwoFormulasAgreeOnRandomCases) {
  nn::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::vector<bool>> gold(1 + rng.below(3));
    std::vector<std::vector<bool>> pred(gold.size());
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const std::size_t n = 1 + rng.below(6);
      for (std::size_t j = 0; j < n; ++j) {
        const bool g = j == 0 || rng.below(2) == 1;
        const bool p = j == 0 || rng.below(2) == 1;
        gold[i].push_back(g);
        pred[i].push_back(p);
        if (j == 0) continue;
        tp += g && p;
        fp += !g && p;
        fn += g && !p;
      }
    }
    const auto f1 = apbp_f1(pred, gold);
    if (tp + fp + fn == 0) {
      EXPECT_FALSE(f1.has_value());
      continue;
    }
    const double direct = 2.0 * tp / (2.0 * tp + fp + fn);
    ASSERT_TRUE(f1.has_value());
    EXPECT_NEAR(*f1, direct, 1e-12);
  }
}

std::vector<AccentPhrase> spans(std::vector<int> nuclei, std::size_t width = 1) {
  std::vector<AccentPhrase> out;
  std::size_t at = 0;
  for (int n : nuclei) {
    out.push_back({at, at + width, n});
    at += width;
  }
  return out;
}

TEST(AnppAccuracy, Examples) {
  EXPECT_EQ(anpp_accuracy({spans({1, 0, 2})}, {spans({1, 0, 2})}), 1.0);
  EXPECT_NEAR(*anpp_accuracy({spans({1, 0, 2, 3, 1})}, {spans({1, 0, 2, 3, 2})}), 0.8, 1e-12);
  EXPECT_FALSE(anpp_accuracy({spans({1, 0})}, {spans({1, 0})}, PhraseSubset::kLong).has_value());
  EXPECT_EQ(anpp_accuracy({spans({1, 0}, 3)}, {spans({1, 2}, 3)}, PhraseSubset::kLong), 0.5);
  try {
    anpp_accuracy({spans({1, 0})}, {spans({1}, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpanMismatch);
  }
}

TEST(OverallAp, Examples) {
  const ApScores perfect = overall_ap({pitch("LHH"), pitch("HL")}, {pitch("LHH"), pitch("HL")});
  EXPECT_EQ(perfect.snt_exact, 1.0);
  EXPECT_EQ(perfect.mora_accuracy, 1.0);
  const ApScores one = overall_ap({pitch("LHHHHHHHHH")}, {pitch("LHHHHHHHHL")});
  EXPECT_EQ(one.snt_exact, 0.0);
  EXPECT_NEAR(*one.mora_accuracy, 0.9, 1e-12);
}

TEST(OverallAp, LengthMismatchExcludedAndCounted) {
  const ApScores s = overall_ap({pitch("LH"), pitch("LHH")}, {pitch("LH"), pitch("LH")});
  EXPECT_EQ(s.excluded, 1u);
  EXPECT_EQ(s.sentences, 1u);
  EXPECT_EQ(s.snt_exact, 1.0);
  EXPECT_THROW(overall_ap({pitch("L")}, {}), Error);
}

PitchSequence random_pitch(nn::Rng& rng, std::size_t len) {
  PitchSequence p;
  for (std::size_t j = 0; j < len; ++j) {
    p.labels.push_back(rng.below(2) ? Pitch::kHigh : Pitch::kLow);
  }
  return p;
}

PitchSequence corrupt(const PitchSequence& gold, nn::Rng& rng) {
  PitchSequence p = gold;
  for (Pitch& v : p.labels) {
    if (rng.below(6) == 0) v = v == Pitch::kHigh ? Pitch::kLow : Pitch::kHigh;
  }
  return p;
}

TEST(OverallAp, SentenceExactNeverExceedsMoraAccuracyPerPair) {
  nn::Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const PitchSequence g = random_pitch(rng, 1 + rng.below(8));
    const ApScores s = overall_ap({corrupt(g, rng)}, {g});
    EXPECT_LE(*s.snt_exact, *s.mora_accuracy);
  }
}

TEST(OverallAp, EqualLengthCorporaKeepTheOrdering) {
  nn::Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    const std::size_t len = 1 + rng.below(8);
    std::vector<PitchSequence> pred;
    std::vector<PitchSequence> gold;
    for (std::size_t i = 0; i < n; ++i) {
      gold.push_back(random_pitch(rng, len));
      pred.push_back(corrupt(gold.back(), rng));
    }
    const ApScores s = overall_ap(pred, gold);
    EXPECT_LE(*s.snt_exact, *s.mora_accuracy);
    std::reverse(pred.begin(), pred.end());
    std::reverse(gold.begin(), gold.end());
    const ApScores r = overall_ap(pred, gold);
    EXPECT_EQ(r.snt_exact, s.snt_exact);
    EXPECT_NEAR(*r.mora_accuracy, *s.mora_accuracy, 1e-12);
  }
}

// Mora accuracy pools morae, so a short exact sentence next to a long wrong
// one pushes sentence accuracy above it.
TEST(OverallAp, PooledMoraeCanFallBelowSentenceExact) {
  const ApScores s = overall_ap({pitch("H"), pitch("HL")}, {pitch("H"), pitch("LH")});
  EXPECT_EQ(*s.snt_exact, 0.5);
  EXPECT_NEAR(*s.mora_accuracy, 1.0 / 3.0, 1e-12);
}

SeedRun run_with(std::uint64_t seed, std::optional<double> v) {
  SeedRun r;
  r.seed = seed;
  r.values.push_back({"acc", "all", v});
  return r;
}

TEST(MultiSeed, SingleSeedMeanIsTheRun) {
  const EvalReport r = multi_seed([](std::uint64_t s) { return run_with(s, 0.7); }, {1});
  const auto sum = r.summary();
  ASSERT_EQ(sum.size(), 1u);
  EXPECT_EQ(sum[0].mean, 0.7);
}

TEST(MultiSeed, IdenticalValuesHaveZeroSpread) {
  const EvalReport r = multi_seed([](std::uint64_t s) { return run_with(s, 0.6); }, {1, 2, 3});
  EXPECT_EQ(r.summary()[0].spread, 0.0);
}

TEST(MultiSeed, MeanOfTwoSeeds) {
  const EvalReport r = multi_seed(
      [](std::uint64_t s) { return run_with(s, s == 1 ? 0.8 : 0.9); }, {1, 2});
  EXPECT_NEAR(*r.summary()[0].mean, 0.85, 1e-12);
  EXPECT_NEAR(*r.summary()[0].spread, 0.05, 1e-12);
}

TEST(MultiSeed, AbsentValuesAreSkippedInMean) {
  const EvalReport r = multi_seed(
      [](std::uint64_t s) { return run_with(s, s == 1 ? std::optional<double>() : 0.5); }, {1, 2});
  EXPECT_EQ(r.summary()[0].mean, 0.5);
  const EvalReport none = multi_seed([](std::uint64_t s) { return run_with(s, {}); }, {1});
  EXPECT_FALSE(none.summary()[0].mean.has_value());
}

TEST(EvalReport, ReportLines) {
  const EvalReport r = multi_seed(
      [](std::uint64_t s) { return run_with(s, s == 1 ? 0.8 : 0.9); }, {1, 2});
  std::ostringstream out;
  r.write_report(out);
  EXPECT_EQ(out.str(),
            "acc\tall\t1\t0.800000\n"
            "acc\tall\t2\t0.900000\n"
            "acc\tall\tmean\t0.850000\n");
  EXPECT_EQ(format_value(std::nullopt), "NA");
}

}  // namespace
}  // namespace jafront
