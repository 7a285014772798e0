#include "jafront/pipeline.h"

#include <ostream>
#include <sstream>

#include "jafront/error.h"

namespace jafront {
namespace {

void apply_pd(const PipelineModels& models, const PipelineResources& resources,
              PipelineResult& result) {
  if (models.pd == nullptr) return;
  result.pronunciations = pd_predict(*models.pd, result.sentence);
  for (const PdPrediction& p : result.pronunciations) {
    Morpheme& m = result.sentence.morphemes[p.position];
    m.set_pronunciation(p.pronunciation);
    if (resources.lexicon == nullptr) continue;
    if (const LexiconEntry* e = resources.lexicon->find(m.surface, m.pronunciation)) {
      m.lexical_accent = e->payload.lexical_accent;
      m.accent_combination_type = e->payload.accent_combination_type;
    }
  }
}

void apply_apbp(const PipelineModels& models, const PipelineResources& resources,
                PipelineResult& result) {
  if (models.apbp != nullptr) {
    result.boundaries = apbp_predict(*models.apbp, result.sentence);
  } else if (resources.boundaries != nullptr) {
    result.boundaries = resources.boundaries->predict(result.sentence);
  } else {
    result.boundaries = RuleBoundaryModel().predict(result.sentence);
  }
}

void apply_anpp(const PipelineModels& models, const PipelineResources& resources,
                PipelineResult& result) {
  if (models.anpp != nullptr) {
    AnppPrediction p = anpp_predict(*models.anpp, result.sentence, result.phrases);
    result.labels = std::move(p.labels);
    result.phrases = std::move(p.phrases);
    result.clamped = p.clamped;
    return;
  }
  const SandhiRuleTable fallback;
  result.labels = rule_sandhi(result.sentence, result.phrases,
                              resources.rules ? *resources.rules : fallback);
  result.clamped = resolve_all(result.phrases, result.sentence, result.labels);
}

// Boundaries and labels are in place; derive phrases and pitch.
void finish(PipelineResult& result) {
  result.pitch = render_pitch(result.phrases, result.sentence);
}

}  // namespace

PipelineResult run_pipeline(std::string_view text, const std::string& id,
                            const PipelineModels& models,
                            const PipelineResources& resources) {
  if (resources.lexicon == nullptr || resources.connection == nullptr) {
    throw Error(ErrorKind::kInvalidArgument,
                "raw-text pipeline needs a lexicon and connection matrix");
  }
  PipelineResult result;
  result.sentence = tokenize(text, *resources.lexicon, *resources.connection,
                             resources.tokenizer);
  result.sentence.id = id;
  if (models.pd != nullptr) {
    const CandidateInventory& inventory = models.pd->resources().candidates;
    for (Morpheme& m : result.sentence.morphemes) {
      if (inventory.contains(m.surface)) {
        m.is_polyphone_target = true;
        m.polyphone_lemma = m.surface;
      }
    }
  }
  apply_pd(models, resources, result);
  apply_apbp(models, resources, result);
  result.phrases = phrases_from_boundaries(result.boundaries);
  apply_anpp(models, resources, result);
  finish(result);
  return result;
}

PipelineResult run_pipeline(const AnnotatedSentence& input,
                            const PipelineModels& models,
                            const PipelineResources& resources,
                            const GoldInjection& gold) {
  PipelineResult result;
  result.sentence = input.sentence;
  if (!gold.pronunciations) apply_pd(models, resources, result);

  if (gold.boundaries) {
    result.boundaries = input.boundaries;
  } else {
    apply_apbp(models, resources, result);
  }
  result.phrases = phrases_from_boundaries(result.boundaries);

  if (gold.nuclei) {
    result.labels = input.nucleus_labels;
    result.clamped = resolve_all(result.phrases, result.sentence, result.labels);
  } else {
    apply_anpp(models, resources, result);
  }
  finish(result);
  return result;
}

void write_result(std::ostream& out, const PipelineResult& result) {
  out << "#id " << result.sentence.id << '\n';
  out << "morphemes";
  for (const Morpheme& m : result.sentence.morphemes) {
    out << ' ' << m.surface << '/' << m.pronunciation << '/' << m.pos;
  }
  out << "\npd";
  for (const PdPrediction& p : result.pronunciations) {
    out << ' ' << p.position << ':' << p.lemma << '=' << p.pronunciation;
  }
  out << "\nphrases";
  for (const AccentPhrase& p : result.phrases) {
    out << ' ' << p.begin << '-' << p.end << ':' << p.nucleus;
  }
  out << "\npitch " << result.pitch.to_string() << '\n';
}

std::string format_result(const PipelineResult& result) {
  std::ostringstream out;
  write_result(out, result);
  return out.str();
}

}  // namespace jafront
