#ifndef JAFRONT_PIPELINE_H_
#define JAFRONT_PIPELINE_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jafront/corpus.h"
#include "jafront/lexicon.h"
#include "jafront/model.h"
#include "jafront/predictors.h"
#include "jafront/sandhi.h"
#include "jafront/tokenizer.h"

namespace jafront {

// Stage models; a null stage falls back to its baseline: tokenizer
// pronunciations (PD), rule_apbp (APBP) and rule_sandhi (ANPP).
struct PipelineModels {
  const TaskModel* pd = nullptr;
  const TaskModel* apbp = nullptr;
  const TaskModel* anpp = nullptr;
};

struct PipelineResources {
  const Lexicon* lexicon = nullptr;
  const ConnectionMatrix* connection = nullptr;
  const SandhiRuleTable* rules = nullptr;        // ANPP fallback
  const RuleBoundaryModel* boundaries = nullptr; // APBP fallback
  TokenizerOptions tokenizer;
};

// Stages replaced by gold annotation (only for annotated input).
struct GoldInjection {
  bool pronunciations = false;
  bool boundaries = false;
  bool nuclei = false;
};

struct PipelineResult {
  Sentence sentence;  // after PD
  std::vector<PdPrediction> pronunciations;
  std::vector<bool> boundaries;
  std::vector<NucleusLabel> labels;
  std::vector<AccentPhrase> phrases;  // with resolved nuclei
  std::size_t clamped = 0;
  PitchSequence pitch;
};

// Raw text: normalize and tokenize, then run every stage.
PipelineResult run_pipeline(std::string_view text, const std::string& id,
                            const PipelineModels& models,
                            const PipelineResources& resources);

// Gold-tokenized input; stages flagged in `gold` copy the annotation.
PipelineResult run_pipeline(const AnnotatedSentence& input,
                            const PipelineModels& models,
                            const PipelineResources& resources,
                            const GoldInjection& gold);

// Line-oriented dump, stable across runs:
//   #id <id>
//   morphemes <surface>/<pronunciation>/<pos> ...
//   pd <position>:<lemma>=<pronunciation> ...
//   phrases <begin>-<end>:<nucleus> ...
//   pitch <L/H string>
void write_result(std::ostream& out, const PipelineResult& result);
std::string format_result(const PipelineResult& result);

}  // namespace jafront

#endif  // JAFRONT_PIPELINE_H_
