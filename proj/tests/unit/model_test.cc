#include <gtest/gtest.h>

#include <filesystem>

#include "builders.h"
#include "jafront/error.h"
#include "jafront/model.h"
#include "jafront/predictors.h"
#include "toy_models.h"

namespace jafront {
namespace {

using testing_support::ToyData;

ModelConfig small(Task task) {
  ModelConfig c;
  c.task = task;
  c.hidden = 6;
  c.field_dim = 4;
  return c;
}

ModelInputs rule_inputs(const ToyData& toy) {
  ModelInputs in;
  in.rules = toy.rules;
  return in;
}

ErrorKind load_kind(const std::string& bytes) {
  try {
    TaskModel::deserialize(bytes);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "deserialize succeeded";
  return ErrorKind::kInvalidArgument;
}

TEST(TaskModel, SaveLoadPredictsIdentically) {
  const ToyData toy = ToyData::load();
  for (Task task : {Task::kApbp, Task::kAnpp}) {
    TaskModel m = make_model(small(task), toy.corpus, rule_inputs(toy), 4);
    nn::TrainSchedule s;
    s.max_epochs = 3;
    train_model(m, toy.corpus, nullptr, s, 4);
    const auto path = std::filesystem::temp_directory_path() / "jafront_model_test.jtfm";
    m.save(path);
    const TaskModel back = TaskModel::load(path);
    std::filesystem::remove(path);
    EXPECT_EQ(back.serialize(), m.serialize());
    for (const auto& s : toy.corpus.sentences) {
      if (task == Task::kApbp) {
        EXPECT_EQ(apbp_predict(back, s.sentence), apbp_predict(m, s.sentence));
      } else {
        EXPECT_EQ(anpp_predict(back, s.sentence, s.phrases()).labels,
                  anpp_predict(m, s.sentence, s.phrases()).labels);
      }
    }
  }
}

TEST(TaskModel, PdWithCharLmRoundTrips) {
  const ToyData toy = ToyData::load();
  CharLmConfig cfg;
  cfg.hidden = 4;
  cfg.embedding_dim = 3;
  cfg.epochs = 1;
  ModelInputs in = rule_inputs(toy);
  in.charlm = std::make_shared<const CharLm>(
      train_charlm(testing_support::raw_lines(toy.corpus), cfg));
  ModelConfig c = small(Task::kPd);
  c.implicit = ImplicitKind::kCharLm;
  const TaskModel m = make_model(c, toy.corpus, in, 2);
  const TaskModel back = TaskModel::deserialize(m.serialize());
  for (const auto& s : toy.corpus.sentences) {
    const auto a = pd_predict(m, s.sentence);
    const auto b = pd_predict(back, s.sentence);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].pronunciation, b[i].pronunciation);
  }
}

TEST(TaskModel, TruncatedFileIsCorrupt) {
  const ToyData toy = ToyData::load();
  const std::string bytes = make_model(small(Task::kApbp), toy.corpus, rule_inputs(toy), 1).serialize();
  for (std::size_t cut : {std::size_t{3}, std::size_t{12}, bytes.size() / 2, bytes.size() - 1}) {
    EXPECT_EQ(load_kind(bytes.substr(0, cut)), ErrorKind::kCorrupt) << cut;
  }
  EXPECT_EQ(load_kind(bytes + "x"), ErrorKind::kCorrupt);
}

TEST(TaskModel, FutureVersionIsRejected) {
  const ToyData toy = ToyData::load();
  std::string bytes = make_model(small(Task::kApbp), toy.corpus, rule_inputs(toy), 1).serialize();
  bytes[4] = 99;
  bytes[5] = bytes[6] = bytes[7] = 0;
  EXPECT_EQ(load_kind(bytes), ErrorKind::kVersionMismatch);
}

TEST(TaskModel, SameSeedSameBytes) {
  const ToyData toy = ToyData::load();
  auto run = [&] {
    TaskModel m = make_model(small(Task::kApbp), toy.corpus, rule_inputs(toy), 8);
    nn::TrainSchedule s;
    s.max_epochs = 4;
    train_model(m, toy.corpus, nullptr, s, 8);
    return m.serialize();
  };
  EXPECT_EQ(run(), run());
}

TEST(TaskModel, OutputsPerTask) {
  const ToyData toy = ToyData::load();
  EXPECT_EQ(make_model(small(Task::kApbp), toy.corpus, rule_inputs(toy), 1).outputs(), 2u);
  EXPECT_EQ(make_model(small(Task::kAnpp), toy.corpus, rule_inputs(toy), 1).outputs(),
            NucleusLabel::kCount);
  // 方: カタ, ホー; 辛い: カライ, ツライ.
  const TaskModel pd = make_model(small(Task::kPd), toy.corpus, rule_inputs(toy), 1);
  EXPECT_EQ(pd.outputs(), 4u);
  EXPECT_THROW(pd.candidate_offset("雲"), Error);
}

TEST(TaskModel, FileEmbeddingsNeedAProvider) {
  const ToyData toy = ToyData::load();
  ModelConfig c = small(Task::kApbp);
  c.implicit = ImplicitKind::kFile;
  EXPECT_THROW(make_model(c, toy.corpus, rule_inputs(toy), 1), Error);
  ModelConfig e = small(Task::kApbp);
  e.ngram_features = true;
  EXPECT_THROW(make_model(e, toy.corpus, rule_inputs(toy), 1), Error);
}

TEST(TaskModel, ExplicitOffAndNoImplicitIsRejected) {
  const ToyData toy = ToyData::load();
  ModelConfig c = small(Task::kApbp);
  c.explicit_features = false;
  EXPECT_THROW(make_model(c, toy.corpus, rule_inputs(toy), 1), Error);
}

TEST(TaskNames, ParseAndPrint) {
  for (Task t : {Task::kPd, Task::kApbp, Task::kAnpp}) EXPECT_EQ(parse_task(to_string(t)), t);
  for (ImplicitKind k : {ImplicitKind::kNone, ImplicitKind::kFile, ImplicitKind::kCharLm}) {
    EXPECT_EQ(parse_implicit(to_string(k)), k);
  }
  EXPECT_THROW(parse_task("pitch"), Error);
}

}  // namespace
}  // namespace jafront
