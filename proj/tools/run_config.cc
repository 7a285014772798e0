#include "run_config.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include "jafront/error.h"

namespace jafront::cli {

const std::vector<std::string> kPathNames = {
    "lexicon", "connection", "train",      "dev",       "test",
    "corpus",  "embeddings", "sandhi",     "boundary_exceptions",
    "ngrams",  "charlm",     "model",      "model_out", "text",
    "report",  "pd_model",   "apbp_model", "anpp_model"};

ModelConfig RunConfig::model_config() const {
  ModelConfig m;
  m.task = parse_task(task);
  m.explicit_features = explicit_features;
  m.ngram_features = ef7;
  m.implicit = parse_implicit(implicit);
  m.hidden = hidden;
  m.field_dim = field_dim;
  return m;
}

bool RunConfig::has_path(const std::string& name) const {
  const auto it = paths.find(name);
  return it != paths.end() && !it->second.empty();
}

std::filesystem::path RunConfig::path(const std::string& name) const {
  if (!has_path(name)) {
    throw Error(ErrorKind::kInvalidArgument, "no '" + name + "' path given");
  }
  return paths.at(name);
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c.task = j.value("task", c.task);
  if (j.contains("features")) {
    const auto& f = j.at("features");
    c.explicit_features = f.value("explicit", c.explicit_features);
    c.implicit = f.value("implicit", c.implicit);
    c.ef7 = f.value("ef7", c.ef7);
  }
  if (j.contains("dims")) {
    const auto& d = j.at("dims");
    c.hidden = d.value("hidden", c.hidden);
    c.field_dim = d.value("field_dim", c.field_dim);
  }
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    auto& t = c.schedule;
    t.learning_rate = s.value("learning_rate", t.learning_rate);
    t.batch_size = s.value("batch_size", t.batch_size);
    t.patience = s.value("patience", t.patience);
    t.anneal_factor = s.value("anneal_factor", t.anneal_factor);
    t.min_learning_rate = s.value("min_learning_rate", t.min_learning_rate);
    t.max_epochs = s.value("max_epochs", t.max_epochs);
  }
  if (j.contains("paths")) {
    for (const auto& [name, value] : j.at("paths").items()) {
      if (std::find(kPathNames.begin(), kPathNames.end(), name) ==
          kPathNames.end()) {
        throw Error(ErrorKind::kParse, "unknown path key '" + name + "'");
      }
      c.paths[name] = value.get<std::string>();
    }
  }
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{
      {"task", c.task},
      {"features",
       {{"explicit", c.explicit_features}, {"implicit", c.implicit}, {"ef7", c.ef7}}},
      {"dims", {{"hidden", c.hidden}, {"field_dim", c.field_dim}}},
      {"schedule",
       {{"learning_rate", c.schedule.learning_rate},
        {"batch_size", c.schedule.batch_size},
        {"patience", c.schedule.patience},
        {"anneal_factor", c.schedule.anneal_factor},
        {"min_learning_rate", c.schedule.min_learning_rate},
        {"max_epochs", c.schedule.max_epochs}}},
      {"paths", c.paths},
      {"seeds", c.seeds}};
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config " + path.string());
  RunConfig config;
  try {
    from_json(nlohmann::json::parse(in), config);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
  return config;
}

void apply_env_overrides(RunConfig& config) {
  for (const std::string& name : kPathNames) {
    std::string var = "JAFRONT_";
    for (char ch : name) {
      var += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    if (const char* value = std::getenv(var.c_str()); value && *value) {
      config.paths[name] = value;
    }
  }
}

}  // namespace jafront::cli
