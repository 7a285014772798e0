#ifndef JAFRONT_MODEL_H_
#define JAFRONT_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "jafront/charlm.h"
#include "jafront/corpus.h"
#include "jafront/embeddings.h"
#include "jafront/features.h"
#include "jafront/network.h"
#include "jafront/sandhi.h"

namespace jafront {

enum class Task { kPd, kApbp, kAnpp };
enum class ImplicitKind { kNone, kFile, kCharLm };

std::string_view to_string(Task task);
Task parse_task(std::string_view name);  // "pd" | "apbp" | "anpp"
std::string_view to_string(ImplicitKind kind);
ImplicitKind parse_implicit(std::string_view name);  // "none" | "file" | "charlm"

struct ModelConfig {
  Task task = Task::kApbp;
  bool explicit_features = true;
  bool ngram_features = false;  // EF7, APBP only
  ImplicitKind implicit = ImplicitKind::kNone;
  std::size_t field_dim = 16;
  std::size_t hidden = 512;

  // The explicit families this configuration feeds to the network.
  FeatureSet feature_set() const;
};

inline constexpr std::string_view kModelMagic = "JTFM";
inline constexpr std::uint32_t kModelVersion = 1;

// A trained (or trainable) task head with everything needed to featurize a
// sentence: vocabularies, candidate inventory, rule table, n-gram counts and
// the character LM when that is the implicit provider.
class TaskModel {
 public:
  struct Resources {
    FeatureVocabulary vocabulary;
    CandidateInventory candidates;  // PD only
    SandhiRuleTable rules;
    std::optional<NgramCounts> ngrams;
    std::shared_ptr<const CharLm> charlm;  // when implicit == kCharLm
    std::size_t implicit_dim = 0;          // when implicit == kFile
  };

  TaskModel(ModelConfig config, Resources resources);

  const ModelConfig& config() const { return config_; }
  const Resources& resources() const { return resources_; }
  TaskNetwork<float>& network() { return network_; }
  const TaskNetwork<float>& network() const { return network_; }

  void init(std::uint64_t seed);

  // Number of output labels: 2 (APBP), NucleusLabel::kCount (ANPP), or the
  // total candidate rows (PD).
  std::size_t outputs() const { return network_.spec().outputs; }

  // First output row of `lemma`'s candidate block (PD).
  std::size_t candidate_offset(std::string_view lemma) const;

  // Provider for file-backed implicit features; required before use when
  // implicit == kFile.
  void attach_embeddings(std::shared_ptr<const EmbeddingProvider> provider);
  const EmbeddingProvider* provider() const { return provider_.get(); }

  FeatureContext feature_context() const;

  // Featurizes one sentence for the network. `phrases` feeds EF5/EF6.
  NetworkInput<float> make_input(const Sentence& sentence,
                                 const std::vector<AccentPhrase>* phrases) const;

  std::string serialize() const;
  static TaskModel deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static TaskModel load(const std::filesystem::path& path);

 private:
  static NetworkSpec make_spec(const ModelConfig& config,
                               const Resources& resources);

  ModelConfig config_;
  Resources resources_;
  std::vector<FeatureField> fields_;
  std::map<std::string, std::size_t, std::less<>> candidate_offsets_;
  TaskNetwork<float> network_;
  std::shared_ptr<const EmbeddingProvider> provider_;
};

}  // namespace jafront

#endif  // JAFRONT_MODEL_H_
