#ifndef JAFRONT_TOOLS_RUN_CONFIG_H_
#define JAFRONT_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "jafront/model.h"
#include "jafront/nn/trainer.h"

namespace jafront::cli {

// Experiment description. JSON layout:
// {
//   "task": "pd" | "apbp" | "anpp" | "charlm" | "pipeline",
//   "features": {"explicit": bool, "implicit": "none"|"file"|"charlm",
//                "ef7": bool},
//   "dims": {"hidden": int, "field_dim": int},
//   "schedule": {"learning_rate": num, "batch_size": int, "patience": int,
//                "anneal_factor": num, "min_learning_rate": num,
//                "max_epochs": int},
//   "paths": {"<name>": "<path>", ...},
//   "seeds": [int, ...]
// }
// Every key is optional. Path names: lexicon, connection, train, dev, test,
// corpus, embeddings, sandhi, boundary_exceptions, ngrams, charlm, model,
// model_out, text, report, pd_model, apbp_model, anpp_model.
struct RunConfig {
  std::string task = "apbp";
  bool explicit_features = true;
  std::string implicit = "none";
  bool ef7 = false;
  std::size_t hidden = 512;
  std::size_t field_dim = 16;
  nn::TrainSchedule schedule;
  std::map<std::string, std::string> paths;
  std::vector<std::uint64_t> seeds{1};

  ModelConfig model_config() const;
  bool has_path(const std::string& name) const;
  // Throws kInvalidArgument when the path was never configured.
  std::filesystem::path path(const std::string& name) const;
};

extern const std::vector<std::string> kPathNames;

void from_json(const nlohmann::json& j, RunConfig& c);
void to_json(nlohmann::json& j, const RunConfig& c);

RunConfig load_run_config(const std::filesystem::path& path);

// JAFRONT_<NAME> (upper-cased path name) replaces the configured path.
void apply_env_overrides(RunConfig& config);

}  // namespace jafront::cli

#endif  // JAFRONT_TOOLS_RUN_CONFIG_H_
