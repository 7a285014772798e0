#include "jafront/model.h"

#include <sstream>

#include "jafront/binary_io.h"
#include "jafront/error.h"

namespace jafront {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::kPd: return "pd";
    case Task::kApbp: return "apbp";
    case Task::kAnpp: return "anpp";
  }
  return "?";
}

Task parse_task(std::string_view name) {
  if (name == "pd") return Task::kPd;
  if (name == "apbp") return Task::kApbp;
  if (name == "anpp") return Task::kAnpp;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown task '" + std::string(name) + "'");
}

std::string_view to_string(ImplicitKind kind) {
  switch (kind) {
    case ImplicitKind::kNone: return "none";
    case ImplicitKind::kFile: return "file";
    case ImplicitKind::kCharLm: return "charlm";
  }
  return "?";
}

ImplicitKind parse_implicit(std::string_view name) {
  if (name == "none") return ImplicitKind::kNone;
  if (name == "file") return ImplicitKind::kFile;
  if (name == "charlm") return ImplicitKind::kCharLm;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown implicit provider '" + std::string(name) + "'");
}

FeatureSet ModelConfig::feature_set() const {
  if (!explicit_features) return FeatureSet::none();
  switch (task) {
    case Task::kPd: return FeatureSet::pd();
    case Task::kApbp: return FeatureSet::apbp(ngram_features);
    case Task::kAnpp: return FeatureSet::anpp();
  }
  return FeatureSet::none();
}

NetworkSpec TaskModel::make_spec(const ModelConfig& config,
                                 const Resources& resources) {
  NetworkSpec spec;
  for (FeatureField f : config.feature_set().fields()) {
    spec.field_vocab_sizes.push_back(resources.vocabulary.size(f));
  }
  spec.field_dim = config.field_dim;
  spec.hidden = config.hidden;
  switch (config.implicit) {
    case ImplicitKind::kNone: spec.implicit_dim = 0; break;
    case ImplicitKind::kFile: spec.implicit_dim = resources.implicit_dim; break;
    case ImplicitKind::kCharLm:
      if (!resources.charlm) {
        throw Error(ErrorKind::kInvalidArgument,
                    "char-LM implicit features need a character LM");
      }
      spec.implicit_dim = resources.charlm->dim();
      break;
  }
  if (config.implicit == ImplicitKind::kFile && spec.implicit_dim == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "file implicit features need a positive dimension");
  }
  switch (config.task) {
    case Task::kApbp:
      spec.head = HeadKind::kCrf;
      spec.outputs = 2;
      break;
    case Task::kAnpp:
      spec.head = HeadKind::kCrf;
      spec.outputs = NucleusLabel::kCount;
      break;
    case Task::kPd: {
      spec.head = HeadKind::kCandidates;
      std::size_t rows = 0;
      for (const auto& [lemma, list] : resources.candidates.lemmas()) {
        rows += list.size();
      }
      if (rows == 0) {
        throw Error(ErrorKind::kInvalidArgument,
                    "PD model needs a non-empty candidate inventory");
      }
      spec.outputs = rows;
      break;
    }
  }
  return spec;
}

TaskModel::TaskModel(ModelConfig config, Resources resources)
    : config_(config),
      resources_(std::move(resources)),
      fields_(config_.feature_set().fields()),
      network_(make_spec(config_, resources_)) {
  if (config_.ngram_features && !resources_.ngrams) {
    throw Error(ErrorKind::kInvalidArgument,
                "n-gram features enabled without n-gram counts");
  }
  std::size_t offset = 0;
  for (const auto& [lemma, list] : resources_.candidates.lemmas()) {
    candidate_offsets_.emplace(lemma, offset);
    offset += list.size();
  }
  if (config_.implicit == ImplicitKind::kCharLm) {
    provider_ = std::make_shared<CharLmProvider>(resources_.charlm);
  }
}

void TaskModel::init(std::uint64_t seed) {
  nn::Rng rng(seed);
  network_.init(rng);
}

std::size_t TaskModel::candidate_offset(std::string_view lemma) const {
  const auto it = candidate_offsets_.find(lemma);
  if (it == candidate_offsets_.end()) {
    throw Error(ErrorKind::kUnknownLemma,
                "lemma '" + std::string(lemma) + "' not in the PD inventory");
  }
  return it->second;
}

void TaskModel::attach_embeddings(
    std::shared_ptr<const EmbeddingProvider> provider) {
  if (config_.implicit != ImplicitKind::kFile) {
    throw Error(ErrorKind::kInvalidArgument,
                "model does not use file-backed implicit features");
  }
  if (provider->dim() != network_.spec().implicit_dim) {
    throw Error(ErrorKind::kDimMismatch,
                "embedding dim " + std::to_string(provider->dim()) +
                    ", model expects " +
                    std::to_string(network_.spec().implicit_dim));
  }
  provider_ = std::move(provider);
}

FeatureContext TaskModel::feature_context() const {
  FeatureContext ctx;
  ctx.rules = &resources_.rules;
  ctx.ngrams = resources_.ngrams ? &*resources_.ngrams : nullptr;
  return ctx;
}

NetworkInput<float> TaskModel::make_input(
    const Sentence& sentence, const std::vector<AccentPhrase>* phrases) const {
  NetworkInput<float> input;
  input.fields.assign(sentence.size(), {});
  if (!fields_.empty()) {
    const std::vector<FeatureBundle> bundles =
        extract_features(sentence, phrases, feature_context());
    for (std::size_t t = 0; t < bundles.size(); ++t) {
      const FieldIndices all = resources_.vocabulary.lookup(bundles[t]);
      input.fields[t].reserve(fields_.size());
      for (FeatureField f : fields_) {
        input.fields[t].push_back(all[static_cast<std::size_t>(f)]);
      }
    }
  }
  if (config_.implicit != ImplicitKind::kNone) {
    if (!provider_) {
      throw Error(ErrorKind::kInvalidArgument,
                  "no implicit feature provider attached to the model");
    }
    input.implicit = provider_->embed(sentence);
  } else {
    input.implicit = nn::Matrix<float>(sentence.size(), 0);
  }
  return input;
}

std::string TaskModel::serialize() const {
  BinaryWriter w;
  w.raw(kModelMagic);
  w.u32(kModelVersion);
  w.str(to_string(config_.task));
  w.u32(config_.explicit_features ? 1 : 0);
  w.u32(config_.ngram_features ? 1 : 0);
  w.str(to_string(config_.implicit));
  w.u32(static_cast<std::uint32_t>(config_.field_dim));
  w.u32(static_cast<std::uint32_t>(config_.hidden));
  w.u32(static_cast<std::uint32_t>(resources_.implicit_dim));

  w.u32(static_cast<std::uint32_t>(kFeatureFieldCount));
  for (std::size_t f = 0; f < kFeatureFieldCount; ++f) {
    const auto& symbols =
        resources_.vocabulary.symbols(static_cast<FeatureField>(f));
    w.u32(static_cast<std::uint32_t>(symbols.size()));
    for (const auto& [symbol, index] : symbols) {
      w.str(symbol);
      w.u32(static_cast<std::uint32_t>(index));
    }
  }

  const auto& lemmas = resources_.candidates.lemmas();
  w.u32(static_cast<std::uint32_t>(lemmas.size()));
  for (const auto& [lemma, list] : lemmas) {
    w.str(lemma);
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (const std::string& p : list) w.str(p);
  }

  const auto& rules = resources_.rules.rules();
  w.u32(static_cast<std::uint32_t>(rules.size()));
  for (const SandhiRule& r : rules) {
    w.str(r.combination_type);
    w.str(r.pos_pair);
    w.str(r.mora_bucket);
    w.str(r.outcome.to_string());
  }

  w.u32(resources_.ngrams ? 1 : 0);
  if (resources_.ngrams) {
    std::ostringstream tsv;
    write_ngram_counts(tsv, *resources_.ngrams);
    w.str(tsv.str());
  }

  w.u32(resources_.charlm ? 1 : 0);
  if (resources_.charlm) resources_.charlm->write(w);

  const auto params = network_.params();
  w.u32(static_cast<std::uint32_t>(params.size()));
  for (const auto* p : params) w.section(p->name, p->value);
  return w.bytes();
}

TaskModel TaskModel::deserialize(std::string_view bytes) {
  BinaryReader r(bytes);
  if (bytes.size() < 4 || r.raw(4) != kModelMagic) {
    throw Error(ErrorKind::kCorrupt, "not a model file (magic JTFM)");
  }
  const std::uint32_t version = r.u32();
  if (version != kModelVersion) {
    throw Error(ErrorKind::kVersionMismatch,
                "model file version " + std::to_string(version) +
                    ", this build reads " + std::to_string(kModelVersion));
  }
  try {
    ModelConfig config;
    config.task = parse_task(r.str());
    config.explicit_features = r.u32() != 0;
    config.ngram_features = r.u32() != 0;
    config.implicit = parse_implicit(r.str());
    config.field_dim = r.u32();
    config.hidden = r.u32();

    Resources res;
    res.implicit_dim = r.u32();

    if (r.u32() != kFeatureFieldCount) {
      throw Error(ErrorKind::kCorrupt, "feature field count mismatch");
    }
    std::array<std::map<std::string, std::size_t, std::less<>>,
               kFeatureFieldCount>
        maps;
    for (auto& map : maps) {
      const std::uint32_t n = r.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        std::string symbol = r.str();
        map.emplace(std::move(symbol), r.u32());
      }
    }
    res.vocabulary.assign(std::move(maps));

    const std::uint32_t lemma_count = r.u32();
    for (std::uint32_t i = 0; i < lemma_count; ++i) {
      const std::string lemma = r.str();
      const std::uint32_t n = r.u32();
      for (std::uint32_t k = 0; k < n; ++k) res.candidates.add(lemma, r.str());
    }

    const std::uint32_t rule_count = r.u32();
    std::vector<SandhiRule> rules;
    for (std::uint32_t i = 0; i < rule_count; ++i) {
      SandhiRule rule;
      rule.combination_type = r.str();
      rule.pos_pair = r.str();
      rule.mora_bucket = r.str();
      rule.outcome = NucleusLabel::parse(r.str());
      rules.push_back(std::move(rule));
    }
    res.rules = SandhiRuleTable(std::move(rules));

    if (r.u32() != 0) {
      std::istringstream tsv(r.str());
      res.ngrams = read_ngram_counts(tsv);
    }
    if (r.u32() != 0) {
      res.charlm = std::make_shared<const CharLm>(CharLm::read(r));
    }

    TaskModel model(config, std::move(res));
    const auto params = model.network_.params();
    if (r.u32() != params.size()) {
      throw Error(ErrorKind::kCorrupt, "parameter block count mismatch");
    }
    for (auto* p : params) {
      p->value = r.section(p->name, p->value.rows(), p->value.cols());
    }
    if (r.remaining() != 0) {
      throw Error(ErrorKind::kCorrupt, "trailing bytes after parameters");
    }
    return model;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kCorrupt) throw;
    throw Error(ErrorKind::kCorrupt, e.what());
  }
}

void TaskModel::save(const std::filesystem::path& path) const {
  write_file(path, serialize());
}

TaskModel TaskModel::load(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

}  // namespace jafront
