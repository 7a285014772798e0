#ifndef JAFRONT_EVALUATION_H_
#define JAFRONT_EVALUATION_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jafront/corpus.h"
#include "jafront/pipeline.h"
#include "jafront/text.h"

namespace jafront {

// Correct / total over aligned target predictions. Throws
// kAlignmentMismatch when the lists differ in length. Empty -> absent.
std::optional<double> pd_accuracy(const std::vector<std::string>& predicted,
                                  const std::vector<std::string>& gold);

struct F1Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::optional<double> precision() const;
  std::optional<double> recall() const;
  // 2PR / (P + R); absent when there is no positive on either side.
  std::optional<double> f1() const;
};

enum class BoundarySubset { kAll, kAdjacentNouns };
enum class PhraseSubset { kAll, kLong };

// Boundary-class counts over slots 1..n-1. kAdjacentNouns keeps slots whose
// two flanking words are both nouns and needs `sentences`. Throws
// kAlignmentMismatch on differing shapes.
F1Counts apbp_counts(const std::vector<std::vector<bool>>& predicted,
                     const std::vector<std::vector<bool>>& gold,
                     BoundarySubset subset = BoundarySubset::kAll,
                     const std::vector<Sentence>* sentences = nullptr);

std::optional<double> apbp_f1(const std::vector<std::vector<bool>>& predicted,
                              const std::vector<std::vector<bool>>& gold,
                              BoundarySubset subset = BoundarySubset::kAll,
                              const std::vector<Sentence>* sentences = nullptr);

// Fraction of phrases whose nucleus matches. kLong keeps phrases of three
// or more words. Throws kSpanMismatch when spans differ. No phrase in the
// subset -> absent.
std::optional<double> anpp_accuracy(
    const std::vector<std::vector<AccentPhrase>>& predicted,
    const std::vector<std::vector<AccentPhrase>>& gold,
    PhraseSubset subset = PhraseSubset::kAll);

struct ApScores {
  std::optional<double> snt_exact;
  std::optional<double> mora_accuracy;
  std::size_t sentences = 0;  // compared
  std::size_t excluded = 0;   // length mismatches
};

// Sentences whose mora counts differ are excluded and counted. Throws
// kAlignmentMismatch when the lists differ in length.
ApScores overall_ap(const std::vector<PitchSequence>& predicted,
                    const std::vector<PitchSequence>& gold);

struct MetricValue {
  std::string metric;
  std::string subset;  // "all", "adjacent_nouns", "long_phrases", ...
  std::optional<double> value;
};

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<MetricValue> values;
  std::vector<std::string> errors;  // sentence-level error listing
};

struct MetricSummary {
  std::string metric;
  std::string subset;
  std::vector<std::optional<double>> per_seed;
  std::optional<double> mean;    // over seeds where defined
  std::optional<double> spread;  // population standard deviation
};

class EvalReport {
 public:
  void add(SeedRun run) { runs_.push_back(std::move(run)); }
  const std::vector<SeedRun>& runs() const { return runs_; }

  // One entry per (metric, subset) in first-seen order.
  std::vector<MetricSummary> summary() const;

  // Tab-separated: metric, subset, mean, spread, one column per seed.
  void write_tsv(std::ostream& out) const;
  // Aligned table for people.
  void write_table(std::ostream& out) const;
  // One line per value: metric \t subset \t seed \t value ("mean" as seed
  // for aggregates, "NA" for absent values).
  void write_report(std::ostream& out) const;
  void save_report(const std::filesystem::path& path) const;

 private:
  std::vector<SeedRun> runs_;
};

EvalReport multi_seed(const std::function<SeedRun(std::uint64_t)>& run,
                      const std::vector<std::uint64_t>& seeds);

// Model evaluations on an annotated corpus, with an error line per
// sentence that is not fully correct.
SeedRun evaluate_pd(const TaskModel& model, const AnnotatedCorpus& corpus);
SeedRun evaluate_apbp(const TaskModel& model, const AnnotatedCorpus& corpus);
// On gold spans.
SeedRun evaluate_anpp(const TaskModel& model, const AnnotatedCorpus& corpus);
SeedRun evaluate_pipeline(const PipelineModels& models,
                          const PipelineResources& resources,
                          const GoldInjection& gold,
                          const AnnotatedCorpus& corpus);

std::string format_value(const std::optional<double>& value);

}  // namespace jafront

#endif  // JAFRONT_EVALUATION_H_
