#include "jafront/evaluation.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "jafront/error.h"

namespace jafront {
namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kAlignmentMismatch,
                std::string(what) + ": " + std::to_string(a) +
                    " predictions vs " + std::to_string(b) + " gold");
  }
}

bool is_noun(const Morpheme& m) {
  return RuleBoundaryModel::pos_matches(m.pos, "noun");
}

std::string bits(const std::vector<bool>& flags) {
  std::string s;
  for (bool b : flags) s += b ? '1' : '0';
  return s;
}

std::string spans(const std::vector<AccentPhrase>& phrases) {
  std::ostringstream out;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    if (i) out << ' ';
    out << phrases[i].begin << '-' << phrases[i].end << ':' << phrases[i].nucleus;
  }
  return out.str();
}

}  // namespace

std::optional<double> pd_accuracy(const std::vector<std::string>& predicted,
                                  const std::vector<std::string>& gold) {
  require_same_size(predicted.size(), gold.size(), "PD targets");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] == gold[i]) ++correct;
  }
  return ratio(correct, gold.size());
}

std::optional<double> F1Counts::precision() const { return ratio(tp, tp + fp); }
std::optional<double> F1Counts::recall() const { return ratio(tp, tp + fn); }

std::optional<double> F1Counts::f1() const {
  if (tp + fp + fn == 0) return std::nullopt;
  if (tp == 0) return 0.0;
  const double p = *precision();
  const double r = *recall();
  return 2.0 * p * r / (p + r);
}

F1Counts apbp_counts(const std::vector<std::vector<bool>>& predicted,
                     const std::vector<std::vector<bool>>& gold,
                     BoundarySubset subset,
                     const std::vector<Sentence>* sentences) {
  require_same_size(predicted.size(), gold.size(), "APBP sentences");
  if (subset == BoundarySubset::kAdjacentNouns) {
    if (sentences == nullptr) {
      throw Error(ErrorKind::kInvalidArgument,
                  "adjacent-noun subset needs the sentences");
    }
    require_same_size(sentences->size(), gold.size(), "APBP sentences");
  }
  F1Counts c;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    require_same_size(predicted[s].size(), gold[s].size(), "APBP slots");
    if (sentences != nullptr && subset == BoundarySubset::kAdjacentNouns) {
      require_same_size((*sentences)[s].size(), gold[s].size(), "APBP slots");
    }
    for (std::size_t i = 1; i < gold[s].size(); ++i) {
      if (subset == BoundarySubset::kAdjacentNouns) {
        const auto& words = (*sentences)[s].morphemes;
        if (!is_noun(words[i - 1]) || !is_noun(words[i])) continue;
      }
      const bool p = predicted[s][i];
      const bool g = gold[s][i];
      if (p && g) ++c.tp;
      else if (p) ++c.fp;
      else if (g) ++c.fn;
    }
  }
  return c;
}

std::optional<double> apbp_f1(const std::vector<std::vector<bool>>& predicted,
                              const std::vector<std::vector<bool>>& gold,
                              BoundarySubset subset,
                              const std::vector<Sentence>* sentences) {
  return apbp_counts(predicted, gold, subset, sentences).f1();
}

std::optional<double> anpp_accuracy(
    const std::vector<std::vector<AccentPhrase>>& predicted,
    const std::vector<std::vector<AccentPhrase>>& gold, PhraseSubset subset) {
  require_same_size(predicted.size(), gold.size(), "ANPP sentences");
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (predicted[s].size() != gold[s].size()) {
      throw Error(ErrorKind::kSpanMismatch,
                  "sentence " + std::to_string(s) + ": phrase count differs");
    }
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      const AccentPhrase& p = predicted[s][i];
      const AccentPhrase& g = gold[s][i];
      if (p.begin != g.begin || p.end != g.end) {
        throw Error(ErrorKind::kSpanMismatch,
                    "sentence " + std::to_string(s) + ": phrase " +
                        std::to_string(i) + " spans differ");
      }
      if (subset == PhraseSubset::kLong && g.word_count() < 3) continue;
      ++total;
      if (p.nucleus == g.nucleus) ++correct;
    }
  }
  return ratio(correct, total);
}

ApScores overall_ap(const std::vector<PitchSequence>& predicted,
                    const std::vector<PitchSequence>& gold) {
  require_same_size(predicted.size(), gold.size(), "pitch sequences");
  ApScores scores;
  std::size_t exact = 0;
  std::size_t morae = 0;
  std::size_t correct = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& p = predicted[s].labels;
    const auto& g = gold[s].labels;
    if (p.size() != g.size()) {
      ++scores.excluded;
      continue;
    }
    ++scores.sentences;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (p[i] == g[i]) ++ok;
    }
    if (ok == g.size()) ++exact;
    morae += g.size();
    correct += ok;
  }
  scores.snt_exact = ratio(exact, scores.sentences);
  scores.mora_accuracy = ratio(correct, morae);
  // A compared sentence with no morae has no mora labels to score.
  if (!scores.mora_accuracy && scores.sentences > 0) scores.mora_accuracy = 1.0;
  return scores;
}

std::vector<MetricSummary> EvalReport::summary() const {
  std::vector<MetricSummary> out;
  auto find = [&out](const MetricValue& v) -> MetricSummary& {
    for (MetricSummary& s : out) {
      if (s.metric == v.metric && s.subset == v.subset) return s;
    }
    out.push_back({v.metric, v.subset, {}, std::nullopt, std::nullopt});
    return out.back();
  };
  for (std::size_t r = 0; r < runs_.size(); ++r) {
    for (const MetricValue& v : runs_[r].values) {
      MetricSummary& s = find(v);
      s.per_seed.resize(r, std::nullopt);
      s.per_seed.push_back(v.value);
    }
  }
  for (MetricSummary& s : out) {
    s.per_seed.resize(runs_.size(), std::nullopt);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : s.per_seed) {
      if (v) {
        sum += *v;
        ++n;
      }
    }
    if (n == 0) continue;
    const double mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (const auto& v : s.per_seed) {
      if (v) var += (*v - mean) * (*v - mean);
    }
    s.mean = mean;
    s.spread = std::sqrt(var / static_cast<double>(n));
  }
  return out;
}

std::string format_value(const std::optional<double>& value) {
  if (!value) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *value);
  return buf;
}

void EvalReport::write_tsv(std::ostream& out) const {
  out << "metric\tsubset\tmean\tspread";
  for (const SeedRun& r : runs_) out << "\tseed" << r.seed;
  out << '\n';
  for (const MetricSummary& s : summary()) {
    out << s.metric << '\t' << s.subset << '\t' << format_value(s.mean) << '\t'
        << format_value(s.spread);
    for (const auto& v : s.per_seed) out << '\t' << format_value(v);
    out << '\n';
  }
}

void EvalReport::write_table(std::ostream& out) const {
  const auto rows = summary();
  std::size_t w_metric = 6;
  std::size_t w_subset = 6;
  for (const MetricSummary& s : rows) {
    w_metric = std::max(w_metric, s.metric.size());
    w_subset = std::max(w_subset, s.subset.size());
  }
  out << std::left << std::setw(static_cast<int>(w_metric)) << "metric" << "  "
      << std::setw(static_cast<int>(w_subset)) << "subset" << "  "
      << std::setw(10) << "mean" << "  " << "spread\n";
  for (const MetricSummary& s : rows) {
    out << std::setw(static_cast<int>(w_metric)) << s.metric << "  "
        << std::setw(static_cast<int>(w_subset)) << s.subset << "  "
        << std::setw(10) << format_value(s.mean) << "  "
        << format_value(s.spread) << '\n';
  }
  out << std::right;
  for (const SeedRun& r : runs_) {
    for (const std::string& e : r.errors) out << "seed " << r.seed << ": " << e << '\n';
  }
}

void EvalReport::write_report(std::ostream& out) const {
  for (const SeedRun& r : runs_) {
    for (const MetricValue& v : r.values) {
      out << v.metric << '\t' << v.subset << '\t' << r.seed << '\t'
          << format_value(v.value) << '\n';
    }
  }
  for (const MetricSummary& s : summary()) {
    out << s.metric << '\t' << s.subset << "\tmean\t" << format_value(s.mean)
        << '\n';
  }
}

void EvalReport::save_report(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write_report(out);
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

EvalReport multi_seed(const std::function<SeedRun(std::uint64_t)>& run,
                      const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw Error(ErrorKind::kInvalidArgument, "no seeds given");
  EvalReport report;
  for (std::uint64_t seed : seeds) {
    SeedRun r = run(seed);
    r.seed = seed;
    report.add(std::move(r));
  }
  return report;
}

SeedRun evaluate_pd(const TaskModel& model, const AnnotatedCorpus& corpus) {
  SeedRun run;
  std::vector<std::string> predicted;
  std::vector<std::string> gold;
  for (const AnnotatedSentence& a : corpus.sentences) {
    const Sentence& s = a.sentence;
    std::vector<std::string> expected;
    for (const Morpheme& m : s.morphemes) {
      if (m.is_polyphone_target) expected.push_back(m.pronunciation);
    }
    if (expected.empty()) continue;
    std::vector<std::string> got(expected.size());
    try {
      const auto preds = pd_predict(model, s);
      for (std::size_t i = 0; i < preds.size(); ++i) got[i] = preds[i].pronunciation;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUnknownLemma) throw;
      run.errors.push_back(s.id + ": " + e.what());
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (got[i] != expected[i] && !got[i].empty()) {
        run.errors.push_back(s.id + ": predicted " + got[i] + ", gold " +
                             expected[i]);
      }
    }
    predicted.insert(predicted.end(), got.begin(), got.end());
    gold.insert(gold.end(), expected.begin(), expected.end());
  }
  run.values.push_back({"pd_accuracy", "all", pd_accuracy(predicted, gold)});
  return run;
}

SeedRun evaluate_apbp(const TaskModel& model, const AnnotatedCorpus& corpus) {
  SeedRun run;
  std::vector<std::vector<bool>> predicted;
  std::vector<std::vector<bool>> gold;
  std::vector<Sentence> sentences;
  for (const AnnotatedSentence& a : corpus.sentences) {
    predicted.push_back(apbp_predict(model, a.sentence));
    gold.push_back(a.boundaries);
    sentences.push_back(a.sentence);
    if (predicted.back() != gold.back()) {
      run.errors.push_back(a.sentence.id + ": predicted " + bits(predicted.back()) +
                           ", gold " + bits(gold.back()));
    }
  }
  run.values.push_back({"apbp_f1", "all", apbp_f1(predicted, gold)});
  run.values.push_back({"apbp_f1", "adjacent_nouns",
                        apbp_f1(predicted, gold, BoundarySubset::kAdjacentNouns,
                                &sentences)});
  return run;
}

SeedRun evaluate_anpp(const TaskModel& model, const AnnotatedCorpus& corpus) {
  SeedRun run;
  std::vector<std::vector<AccentPhrase>> predicted;
  std::vector<std::vector<AccentPhrase>> gold;
  for (const AnnotatedSentence& a : corpus.sentences) {
    gold.push_back(a.phrases());
    predicted.push_back(anpp_predict(model, a.sentence, gold.back()).phrases);
    if (predicted.back() != gold.back()) {
      run.errors.push_back(a.sentence.id + ": predicted " + spans(predicted.back()) +
                           ", gold " + spans(gold.back()));
    }
  }
  run.values.push_back({"anpp_accuracy", "all", anpp_accuracy(predicted, gold)});
  run.values.push_back({"anpp_accuracy", "long_phrases",
                        anpp_accuracy(predicted, gold, PhraseSubset::kLong)});
  return run;
}

SeedRun evaluate_pipeline(const PipelineModels& models,
                          const PipelineResources& resources,
                          const GoldInjection& gold,
                          const AnnotatedCorpus& corpus) {
  SeedRun run;
  std::vector<PitchSequence> predicted;
  std::vector<PitchSequence> expected;
  for (const AnnotatedSentence& a : corpus.sentences) {
    const PipelineResult r = run_pipeline(a, models, resources, gold);
    predicted.push_back(r.pitch);
    expected.push_back(a.pitch());
    if (predicted.back() != expected.back()) {
      run.errors.push_back(a.sentence.id + ": predicted " +
                           predicted.back().to_string() + ", gold " +
                           expected.back().to_string());
    }
  }
  const ApScores scores = overall_ap(predicted, expected);
  run.values.push_back({"snt_exact", "all", scores.snt_exact});
  run.values.push_back({"mora_accuracy", "all", scores.mora_accuracy});
  run.values.push_back(
      {"excluded", "all", static_cast<double>(scores.excluded)});
  return run;
}

}  // namespace jafront
