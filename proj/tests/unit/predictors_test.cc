#include <gtest/gtest.h>

#include "builders.h"
#include "jafront/error.h"
#include "jafront/pipeline.h"
#include "jafront/predictors.h"
#include "toy_models.h"

namespace jafront {
namespace {

using testing_support::sentence;
using testing_support::ToyData;
using testing_support::ToyModels;
using testing_support::word;

const AnnotatedSentence& by_id(const AnnotatedCorpus& c, const std::string& id) {
  for (const auto& s : c.sentences) {
    if (s.sentence.id == id) return s;
  }
  throw std::runtime_error("no sentence " + id);
}

TEST(Apbp, SingleMorphemeIsABoundary) {
  const ToyData toy = ToyData::load();
  ModelInputs in;
  in.rules = toy.rules;
  ModelConfig c;
  c.task = Task::kApbp;
  c.hidden = 4;
  const TaskModel m = make_model(c, toy.corpus, in, 3);
  EXPECT_EQ(apbp_predict(m, sentence({word("雲", "noun", "クモ")})), (std::vector<bool>{true}));
  EXPECT_TRUE(apbp_predict(m, Sentence{}).empty());
  for (const auto& s : toy.corpus.sentences) EXPECT_TRUE(apbp_predict(m, s.sentence).front());
}

TEST(Apbp, OverfitsOneSentence) {
  const ToyData toy = ToyData::load();
  AnnotatedCorpus one;
  one.sentences.push_back(toy.corpus.sentences.front());
  ModelInputs in;
  in.rules = toy.rules;
  ModelConfig c;
  c.task = Task::kApbp;
  c.hidden = 8;
  TaskModel m = make_model(c, one, in, 5);
  train_model(m, one, nullptr, testing_support::toy_schedule(), 5);
  EXPECT_EQ(apbp_predict(m, one.sentences[0].sentence), one.sentences[0].boundaries);
}

TEST(Predictors, WrongTaskIsRejected) {
  const auto& models = ToyModels::get();
  const Sentence& s = models.data.corpus.sentences.front().sentence;
  EXPECT_THROW(apbp_predict(*models.pd, s), Error);
  EXPECT_THROW(pd_predict(*models.apbp, s), Error);
  EXPECT_THROW(anpp_predict(*models.apbp, s, {}), Error);
}

TEST(Pd, ContextPicksTheReading) {
  const auto& models = ToyModels::get();
  const auto painful = pd_predict(*models.pd, by_id(models.data.corpus, "toy02").sentence);
  ASSERT_EQ(painful.size(), 1u);
  EXPECT_EQ(painful[0].lemma, "辛い");
  EXPECT_EQ(painful[0].pronunciation, "ツライ");
  const auto spicy = pd_predict(*models.pd, by_id(models.data.corpus, "toy03").sentence);
  ASSERT_EQ(spicy.size(), 1u);
  EXPECT_EQ(spicy[0].pronunciation, "カライ");
}

TEST(Pd, NoTargetsNoOutput) {
  const auto& models = ToyModels::get();
  EXPECT_TRUE(pd_predict(*models.pd, sentence({word("雲", "noun", "クモ")})).empty());
}

TEST(Pd, OutputIsAlwaysACandidate) {
  const auto& models = ToyModels::get();
  const auto& inv = models.pd->resources().candidates;
  for (const auto& s : models.data.corpus.sentences) {
    for (const auto& p : pd_predict(*models.pd, s.sentence)) {
      const auto& list = inv.candidates(p.lemma);
      EXPECT_NE(std::find(list.begin(), list.end(), p.pronunciation), list.end());
    }
  }
}

TEST(Pd, UnknownLemma) {
  const auto& models = ToyModels::get();
  Morpheme m = word("雲", "noun", "クモ");
  m.is_polyphone_target = true;
  try {
    pd_predict(*models.pd, sentence({m}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownLemma);
  }
}

TEST(Apbp, KyotoTowerBoundaries) {
  const auto& models = ToyModels::get();
  const auto b = apbp_predict(*models.apbp, models.data.corpus.sentences.front().sentence);
  EXPECT_FALSE(b[1]);
  EXPECT_TRUE(b[2]);
}

TEST(Anpp, SpanMismatch) {
  const auto& models = ToyModels::get();
  const Sentence& s = models.data.corpus.sentences.front().sentence;
  try {
    anpp_predict(*models.anpp, s, {{0, 2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpanMismatch);
  }
}

TEST(Anpp, NucleiStayInsidePhrases) {
  const auto& models = ToyModels::get();
  for (const auto& s : models.data.corpus.sentences) {
    const auto p = anpp_predict(*models.anpp, s.sentence, s.phrases());
    ASSERT_EQ(p.labels.size(), s.sentence.size());
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
      if (p.labels[i].is_nucleus()) {
        EXPECT_LE(static_cast<std::size_t>(p.labels[i].k()), s.sentence.morphemes[i].mora_count());
      }
    }
    for (const auto& ph : p.phrases) {
      EXPECT_LE(static_cast<std::size_t>(ph.nucleus), phrase_mora_count(ph, s.sentence));
    }
  }
}

TEST(Anpp, KyotoTowerCompoundNucleus) {
  const auto& models = ToyModels::get();
  const auto& kyoto = models.data.corpus.sentences.front();
  const auto p = anpp_predict(*models.anpp, kyoto.sentence, kyoto.phrases());
  EXPECT_EQ(p.labels[0], NucleusLabel::flat());
  EXPECT_EQ(p.labels[1], NucleusLabel::nucleus(1));
  EXPECT_EQ(p.phrases[0].nucleus, 4);
}

TEST(TrainModel, PdWithoutTargetsIsEmptySplit) {
  const auto& models = ToyModels::get();
  AnnotatedCorpus none;
  none.sentences.push_back(by_id(models.data.corpus, "toy01"));
  none.sentences[0].sentence.morphemes[4].is_polyphone_target = false;
  TaskModel copy = *models.pd;
  try {
    train_model(copy, none, nullptr, testing_support::toy_schedule(2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptySplit);
  }
}

TEST(TrainModel, EpochMeanLossFallsEarlyAtSmallRate) {
  const ToyData toy = ToyData::load();
  AnnotatedCorpus thirty;
  thirty.sentences.assign(toy.corpus.sentences.begin(), toy.corpus.sentences.begin() + 30);
  ModelInputs in;
  in.rules = toy.rules;
  ModelConfig c;
  c.task = Task::kApbp;
  c.hidden = 16;
  TaskModel m = make_model(c, thirty, in, 2);
  nn::TrainSchedule s;
  s.learning_rate = 0.01;
  s.max_epochs = 5;
  const auto h = train_model(m, thirty, nullptr, s, 2);
  ASSERT_EQ(h.epochs.size(), 5u);
  for (std::size_t i = 1; i < h.epochs.size(); ++i) {
    EXPECT_LE(h.epochs[i].train_loss, h.epochs[i - 1].train_loss);
  }
}

PipelineResources toy_resources(const ToyData& toy) {
  PipelineResources r;
  r.lexicon = &toy.lexicon;
  r.connection = &toy.connection;
  r.rules = &toy.rules;
  r.boundaries = &toy.boundaries;
  return r;
}

TEST(Pipeline, EmptyText) {
  const ToyData toy = ToyData::load();
  const PipelineResult r = run_pipeline("", "e", {}, toy_resources(toy));
  EXPECT_EQ(r.sentence.size(), 0u);
  EXPECT_TRUE(r.boundaries.empty());
  EXPECT_TRUE(r.phrases.empty());
  EXPECT_TRUE(r.pitch.labels.empty());
}

TEST(Pipeline, GoldInjectionReproducesGoldPitch) {
  const ToyData toy = ToyData::load();
  const auto& models = ToyModels::get();
  const PipelineModels trained{models.pd.get(), models.apbp.get(), models.anpp.get()};
  for (const auto& s : toy.corpus.sentences) {
    const auto r = run_pipeline(s, trained, toy_resources(toy), {true, true, true});
    EXPECT_EQ(r.pitch, s.pitch()) << s.sentence.id;
    EXPECT_EQ(r.phrases, s.phrases());
  }
}

TEST(Pipeline, RuleBaselineOnToyCorpus) {
  const ToyData toy = ToyData::load();
  for (const auto& s : toy.corpus.sentences) {
    const auto r = run_pipeline(s, {}, toy_resources(toy), {true, false, false});
    EXPECT_EQ(r.boundaries, rule_apbp(s.sentence, toy.boundaries));
  }
}

TEST(Pipeline, KyotoTowerSentenceWithOverfitModels) {
  const auto& models = ToyModels::get();
  const ToyData& toy = models.data;
  const PipelineModels trained{models.pd.get(), models.apbp.get(), models.anpp.get()};
  const auto& kyoto = toy.corpus.sentences.front();
  const auto r = run_pipeline(kyoto.sentence.raw, kyoto.sentence.id, trained, toy_resources(toy));
  ASSERT_EQ(r.sentence.size(), kyoto.sentence.size());
  EXPECT_EQ(r.phrases, kyoto.phrases());
  EXPECT_EQ(r.pitch, kyoto.pitch());
  ASSERT_EQ(r.pronunciations.size(), 1u);
  EXPECT_EQ(r.pronunciations[0].pronunciation, "ホー");
}

TEST(Pipeline, DeterministicOutput) {
  const auto& models = ToyModels::get();
  const ToyData& toy = models.data;
  const PipelineModels trained{models.pd.get(), models.apbp.get(), models.anpp.get()};
  for (const auto& s : toy.corpus.sentences) {
    const auto a = format_result(run_pipeline(s.sentence.raw, s.sentence.id, trained, toy_resources(toy)));
    const auto b = format_result(run_pipeline(s.sentence.raw, s.sentence.id, trained, toy_resources(toy)));
    EXPECT_EQ(a, b);
  }
}

TEST(Pipeline, RawPipelineNeedsLexicon) {
  EXPECT_THROW(run_pipeline("花", "x", {}, PipelineResources{}), Error);
}

}  // namespace
}  // namespace jafront
