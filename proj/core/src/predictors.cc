#include "jafront/predictors.h"

#include <algorithm>
#include <limits>

#include "jafront/error.h"

namespace jafront {
namespace {

constexpr std::size_t kNoGold = std::numeric_limits<std::size_t>::max();

// A featurized sentence with whatever gold the task needs.
struct Prepared {
  const AnnotatedSentence* gold = nullptr;
  NetworkInput<float> input;
  std::vector<std::size_t> labels;        // APBP / ANPP
  std::vector<CandidateTarget> targets;   // PD; gold == kNoGold if unseen
  std::vector<std::string> lemmas;        // PD, parallel to targets
};

std::vector<std::vector<bool>> apbp_allowed(std::size_t steps) {
  std::vector<std::vector<bool>> allowed(steps, std::vector<bool>(2, true));
  if (steps > 0) allowed[0][kNoBoundary] = false;
  return allowed;
}

std::vector<std::vector<bool>> anpp_allowed(const Sentence& sentence) {
  std::vector<std::vector<bool>> allowed;
  allowed.reserve(sentence.size());
  for (const Morpheme& m : sentence.morphemes) {
    std::vector<bool> row(NucleusLabel::kCount, false);
    row[NucleusLabel::keep().index()] = true;
    row[NucleusLabel::flat().index()] = true;
    const int limit = std::min<int>(static_cast<int>(m.mora_count()),
                                    NucleusLabel::kMaxNucleus);
    for (int k = 1; k <= limit; ++k) row[NucleusLabel::nucleus(k).index()] = true;
    allowed.push_back(std::move(row));
  }
  return allowed;
}

// Candidate rows for every polyphone target. Unknown lemmas get no rows.
void collect_targets(const TaskModel& model, const Sentence& sentence,
                     bool strict, std::vector<CandidateTarget>& targets,
                     std::vector<std::string>& lemmas) {
  const CandidateInventory& inventory = model.resources().candidates;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const Morpheme& m = sentence.morphemes[i];
    if (!m.is_polyphone_target) continue;
    std::string lemma = target_lemma(m);
    CandidateTarget target;
    target.position = i;
    target.gold = kNoGold;
    if (inventory.contains(lemma)) {
      const auto& list = inventory.candidates(lemma);
      const std::size_t offset = model.candidate_offset(lemma);
      for (std::size_t c = 0; c < list.size(); ++c) {
        target.rows.push_back(offset + c);
        if (list[c] == m.pronunciation) target.gold = c;
      }
    } else if (strict) {
      throw Error(ErrorKind::kUnknownLemma,
                  "polyphone lemma '" + lemma + "' is not in the inventory");
    }
    targets.push_back(std::move(target));
    lemmas.push_back(std::move(lemma));
  }
}

Prepared prepare(const TaskModel& model, const AnnotatedSentence& gold) {
  Prepared p;
  p.gold = &gold;
  const Sentence& s = gold.sentence;
  switch (model.config().task) {
    case Task::kPd:
      collect_targets(model, s, false, p.targets, p.lemmas);
      p.input = model.make_input(s, nullptr);
      break;
    case Task::kApbp:
      p.input = model.make_input(s, nullptr);
      for (bool b : gold.boundaries) p.labels.push_back(b ? kBoundary : kNoBoundary);
      break;
    case Task::kAnpp: {
      const std::vector<AccentPhrase> phrases = gold.phrases();
      p.input = model.make_input(s, &phrases);
      for (NucleusLabel l : gold.nucleus_labels) p.labels.push_back(l.index());
      break;
    }
  }
  return p;
}

std::vector<Prepared> prepare_all(const TaskModel& model,
                                  const AnnotatedCorpus& corpus) {
  std::vector<Prepared> out;
  out.reserve(corpus.size());
  for (const AnnotatedSentence& s : corpus.sentences) {
    out.push_back(prepare(model, s));
  }
  return out;
}

std::vector<bool> decode_boundaries(const TaskModel& model,
                                    const NetworkInput<float>& input) {
  if (input.steps() == 0) return {};
  const auto allowed = apbp_allowed(input.steps());
  const auto result = model.network().decode(input, &allowed);
  std::vector<bool> out;
  out.reserve(result.labels.size());
  for (std::size_t l : result.labels) out.push_back(l == kBoundary);
  return out;
}

std::vector<NucleusLabel> decode_nuclei(const TaskModel& model,
                                        const Sentence& sentence,
                                        const NetworkInput<float>& input) {
  if (input.steps() == 0) return {};
  const auto allowed = anpp_allowed(sentence);
  const auto result = model.network().decode(input, &allowed);
  std::vector<NucleusLabel> out;
  out.reserve(result.labels.size());
  for (std::size_t l : result.labels) out.push_back(NucleusLabel::from_index(l));
  return out;
}

// Targets whose lemma or gold pronunciation is unseen count as errors.
double metric(const TaskModel& model, const std::vector<Prepared>& data) {
  switch (model.config().task) {
    case Task::kPd: {
      std::size_t correct = 0;
      std::size_t total = 0;
      for (const Prepared& p : data) {
        if (p.targets.empty()) continue;
        const auto emissions = model.network().emissions(p.input);
        for (const CandidateTarget& t : p.targets) {
          ++total;
          if (t.gold != kNoGold && model.network().choose(emissions, t) == t.gold) {
            ++correct;
          }
        }
      }
      return total == 0 ? 0.0
                        : static_cast<double>(correct) / static_cast<double>(total);
    }
    case Task::kApbp: {
      std::size_t tp = 0;
      std::size_t fp = 0;
      std::size_t fn = 0;
      for (const Prepared& p : data) {
        const std::vector<bool> pred = decode_boundaries(model, p.input);
        const std::vector<bool>& gold = p.gold->boundaries;
        for (std::size_t i = 1; i < pred.size(); ++i) {
          if (pred[i] && gold[i]) ++tp;
          else if (pred[i]) ++fp;
          else if (gold[i]) ++fn;
        }
      }
      if (tp + fp + fn == 0) return 1.0;
      return 2.0 * static_cast<double>(tp) /
             static_cast<double>(2 * tp + fp + fn);
    }
    case Task::kAnpp: {
      std::size_t correct = 0;
      std::size_t total = 0;
      for (const Prepared& p : data) {
        const Sentence& s = p.gold->sentence;
        const std::vector<AccentPhrase> gold = p.gold->phrases();
        std::vector<AccentPhrase> pred = gold;
        resolve_all(pred, s, decode_nuclei(model, s, p.input));
        for (std::size_t i = 0; i < gold.size(); ++i) {
          ++total;
          if (pred[i].nucleus == gold[i].nucleus) ++correct;
        }
      }
      return total == 0 ? 0.0
                        : static_cast<double>(correct) / static_cast<double>(total);
    }
  }
  return 0.0;
}

class Objective {
 public:
  explicit Objective(TaskModel& model) : model_(model) {}

  std::vector<nn::Param<float>*> params() { return model_.network().params(); }

  double loss_and_grad(const Prepared& p) {
    if (model_.config().task == Task::kPd) {
      return model_.network().candidate_loss(p.input, p.targets, true);
    }
    return model_.network().sequence_loss(p.input, p.labels, true);
  }

 private:
  TaskModel& model_;
};

}  // namespace

std::string target_lemma(const Morpheme& morpheme) {
  return morpheme.polyphone_lemma.value_or(morpheme.surface);
}

std::vector<PdPrediction> pd_predict(const TaskModel& model,
                                     const Sentence& sentence) {
  if (model.config().task != Task::kPd) {
    throw Error(ErrorKind::kInvalidArgument, "not a PD model");
  }
  std::vector<CandidateTarget> targets;
  std::vector<std::string> lemmas;
  collect_targets(model, sentence, true, targets, lemmas);
  if (targets.empty()) return {};
  const auto emissions = model.network().emissions(model.make_input(sentence, nullptr));
  std::vector<PdPrediction> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& list = model.resources().candidates.candidates(lemmas[i]);
    PdPrediction p;
    p.position = targets[i].position;
    p.lemma = lemmas[i];
    p.pronunciation = list[model.network().choose(emissions, targets[i])];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<bool> apbp_predict(const TaskModel& model,
                               const Sentence& sentence) {
  if (model.config().task != Task::kApbp) {
    throw Error(ErrorKind::kInvalidArgument, "not an APBP model");
  }
  if (sentence.size() == 0) return {};
  return decode_boundaries(model, model.make_input(sentence, nullptr));
}

AnppPrediction anpp_predict(const TaskModel& model, const Sentence& sentence,
                            const std::vector<AccentPhrase>& phrases) {
  if (model.config().task != Task::kAnpp) {
    throw Error(ErrorKind::kInvalidArgument, "not an ANPP model");
  }
  check_partition(phrases, sentence.size());
  AnppPrediction out;
  out.phrases = phrases;
  if (sentence.size() == 0) return out;
  out.labels = decode_nuclei(model, sentence, model.make_input(sentence, &phrases));
  out.clamped = resolve_all(out.phrases, sentence, out.labels);
  return out;
}

TaskModel make_model(const ModelConfig& config, const AnnotatedCorpus& train,
                     const ModelInputs& inputs, std::uint64_t seed) {
  FeatureContext ctx;
  ctx.rules = &inputs.rules;
  ctx.ngrams = inputs.ngrams ? &*inputs.ngrams : nullptr;

  TaskModel::Resources res;
  res.vocabulary = fit_vocabulary(train, ctx);
  if (config.task == Task::kPd) {
    res.candidates = CandidateInventory::from_corpus(train);
  }
  res.rules = inputs.rules;
  if (config.ngram_features) res.ngrams = inputs.ngrams;
  if (config.implicit == ImplicitKind::kCharLm) res.charlm = inputs.charlm;
  if (config.implicit == ImplicitKind::kFile) {
    if (!inputs.embeddings) {
      throw Error(ErrorKind::kInvalidArgument,
                  "file implicit features need an embedding file");
    }
    res.implicit_dim = inputs.embeddings->dim();
  }
  TaskModel model(config, std::move(res));
  if (config.implicit == ImplicitKind::kFile) {
    model.attach_embeddings(inputs.embeddings);
  }
  model.init(seed);
  return model;
}

double task_metric(const TaskModel& model, const AnnotatedCorpus& corpus) {
  return metric(model, prepare_all(model, corpus));
}

nn::TrainHistory train_model(TaskModel& model, const AnnotatedCorpus& train,
                             const AnnotatedCorpus* dev,
                             const nn::TrainSchedule& schedule,
                             std::uint64_t seed) {
  std::vector<Prepared> examples = prepare_all(model, train);
  if (model.config().task == Task::kPd) {
    for (Prepared& p : examples) {
      std::erase_if(p.targets,
                    [](const CandidateTarget& t) { return t.gold == kNoGold; });
    }
    std::erase_if(examples, [](const Prepared& p) { return p.targets.empty(); });
  } else {
    std::erase_if(examples, [](const Prepared& p) { return p.labels.empty(); });
  }
  if (examples.empty()) {
    throw Error(ErrorKind::kEmptySplit, "no usable training example");
  }
  Objective objective(model);
  if (dev == nullptr) {
    return nn::train<float>(objective, examples, {}, schedule, seed);
  }
  const std::vector<Prepared> held_out = prepare_all(model, *dev);
  return nn::train<float>(
      objective, examples, [&] { return metric(model, held_out); }, schedule,
      seed);
}

}  // namespace jafront
