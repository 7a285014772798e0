#ifndef JAFRONT_PREDICTORS_H_
#define JAFRONT_PREDICTORS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jafront/corpus.h"
#include "jafront/labels.h"
#include "jafront/model.h"
#include "jafront/nn/trainer.h"
#include "jafront/text.h"

namespace jafront {

// APBP CRF labels.
inline constexpr std::size_t kNoBoundary = 0;
inline constexpr std::size_t kBoundary = 1;

struct PdPrediction {
  std::size_t position = 0;  // morpheme index
  std::string lemma;
  std::string pronunciation;
};

// Lemma of a polyphone target: its annotated lemma, else its surface.
std::string target_lemma(const Morpheme& morpheme);

// One prediction per polyphone target, in sentence order. Throws
// kUnknownLemma when a target's lemma is missing from the inventory.
std::vector<PdPrediction> pd_predict(const TaskModel& model,
                                     const Sentence& sentence);

// Boundary-before flags; [0] is always true. Empty sentence -> empty.
std::vector<bool> apbp_predict(const TaskModel& model,
                               const Sentence& sentence);

struct AnppPrediction {
  std::vector<NucleusLabel> labels;   // per morpheme
  std::vector<AccentPhrase> phrases;  // input spans with resolved nuclei
  std::size_t clamped = 0;            // phrases whose nucleus was clamped
};

// Per-word nucleus labels over fixed phrase spans. NUC(k) is only decoded
// for words with at least k morae. Throws kSpanMismatch when `phrases` do
// not partition the sentence.
AnppPrediction anpp_predict(const TaskModel& model, const Sentence& sentence,
                            const std::vector<AccentPhrase>& phrases);

// Rule-based boundary baseline, re-exported under the task name.
inline std::vector<bool> rule_apbp(const Sentence& sentence,
                                   const RuleBoundaryModel& rules) {
  return rules.predict(sentence);
}

// Inputs that do not come from the training corpus.
struct ModelInputs {
  SandhiRuleTable rules;
  std::optional<NgramCounts> ngrams;
  std::shared_ptr<const CharLm> charlm;
  std::shared_ptr<const EmbeddingProvider> embeddings;  // implicit == kFile
};

// Fits vocabularies (and the PD inventory) on `train`, builds the network
// and initializes it from `seed`.
TaskModel make_model(const ModelConfig& config, const AnnotatedCorpus& train,
                     const ModelInputs& inputs, std::uint64_t seed);

// Task metric on `corpus`: PD accuracy, APBP F1 (position 0 excluded; 1 when
// neither side has a boundary) or ANPP phrase accuracy on gold spans.
double task_metric(const TaskModel& model, const AnnotatedCorpus& corpus);

// Trains `model` in place with mini-batch SGD, selecting the epoch with the
// best task_metric on `dev`, or the lowest training loss when `dev` is null.
// Throws kEmptySplit when `train` has no usable example (PD: no polyphone
// target).
nn::TrainHistory train_model(TaskModel& model, const AnnotatedCorpus& train,
                             const AnnotatedCorpus* dev,
                             const nn::TrainSchedule& schedule,
                             std::uint64_t seed);

}  // namespace jafront

#endif  // JAFRONT_PREDICTORS_H_
