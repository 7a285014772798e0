#include "cli.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jafront/charlm.h"
#include "jafront/corpus.h"
#include "jafront/embeddings.h"
#include "jafront/error.h"
#include "jafront/evaluation.h"
#include "jafront/features.h"
#include "jafront/lexicon.h"
#include "jafront/model.h"
#include "jafront/pipeline.h"
#include "jafront/predictors.h"
#include "jafront/sandhi.h"
#include "jafront/tokenizer.h"
#include "run_config.h"

namespace jafront::cli {
namespace {

// Flag values; only flags the user actually passed override the config.
struct Flags {
  std::string config_path;
  std::map<std::string, CLI::Option*> path_options;
  std::map<std::string, std::string> paths;

  std::string task;
  CLI::Option* task_opt = nullptr;
  bool explicit_features = true;
  CLI::Option* explicit_opt = nullptr;
  std::string implicit;
  CLI::Option* implicit_opt = nullptr;
  bool ef7 = false;
  CLI::Option* ef7_opt = nullptr;
  std::size_t hidden = 0;
  CLI::Option* hidden_opt = nullptr;
  std::size_t field_dim = 0;
  CLI::Option* field_dim_opt = nullptr;
  double lr = 0.0;
  CLI::Option* lr_opt = nullptr;
  std::size_t batch_size = 0;
  CLI::Option* batch_opt = nullptr;
  std::size_t patience = 0;
  CLI::Option* patience_opt = nullptr;
  std::size_t max_epochs = 0;
  CLI::Option* max_epochs_opt = nullptr;
  std::vector<std::uint64_t> seeds;
  CLI::Option* seeds_opt = nullptr;

  // subcommand options
  std::size_t nbest = 1;
  std::string output;
  std::string predicted;
  std::vector<std::string> models;
  bool gold_boundaries = false;
  bool gold_nuclei = false;
  bool gold_pronunciations = false;
  std::size_t charlm_hidden = 64;
  std::size_t charlm_embedding = 32;
  std::size_t charlm_epochs = 10;
  double charlm_lr = 0.5;
};

std::string flag_name(const std::string& path_name) {
  std::string s = "--" + path_name;
  for (char& ch : s) {
    if (ch == '_') ch = '-';
  }
  return s;
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (!f.config_path.empty()) c = load_run_config(f.config_path);
  apply_env_overrides(c);
  for (const auto& [name, opt] : f.path_options) {
    if (opt->count() > 0) c.paths[name] = f.paths.at(name);
  }
  if (f.task_opt->count()) c.task = f.task;
  if (f.explicit_opt->count()) c.explicit_features = f.explicit_features;
  if (f.implicit_opt->count()) c.implicit = f.implicit;
  if (f.ef7_opt->count()) c.ef7 = f.ef7;
  if (f.hidden_opt->count()) c.hidden = f.hidden;
  if (f.field_dim_opt->count()) c.field_dim = f.field_dim;
  if (f.lr_opt->count()) c.schedule.learning_rate = f.lr;
  if (f.batch_opt->count()) c.schedule.batch_size = f.batch_size;
  if (f.patience_opt->count()) c.schedule.patience = f.patience;
  if (f.max_epochs_opt->count()) c.schedule.max_epochs = f.max_epochs;
  if (f.seeds_opt->count()) c.seeds = f.seeds;
  c.schedule.seeds = c.seeds;
  return c;
}

void log_config(std::ostream& err, const std::string& command,
                const RunConfig& c) {
  nlohmann::json j = c;
  err << "[jafront] " << command << " config " << j.dump() << '\n';
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> input_lines(const RunConfig& c, std::istream& in) {
  if (!c.has_path("text")) return read_lines(in);
  std::ifstream file(c.path("text"));
  if (!file) throw Error(ErrorKind::kIo, "cannot open text " + c.path("text").string());
  return read_lines(file);
}

// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorKind::kIo, "cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

SandhiRuleTable load_rules(const RunConfig& c) {
  return c.has_path("sandhi") ? load_sandhi_table(c.path("sandhi"))
                              : SandhiRuleTable();
}

std::shared_ptr<const EmbeddingProvider> load_embeddings(const RunConfig& c) {
  auto file = std::make_shared<const EmbeddingFile>(
      EmbeddingFile::load(c.path("embeddings")));
  return std::make_shared<FileEmbeddingProvider>(std::move(file));
}

ModelInputs load_model_inputs(const RunConfig& c) {
  ModelInputs inputs;
  inputs.rules = load_rules(c);
  if (c.ef7) inputs.ngrams = load_ngram_counts(c.path("ngrams"));
  if (c.implicit == "charlm") {
    inputs.charlm = std::make_shared<const CharLm>(CharLm::load(c.path("charlm")));
  }
  if (c.implicit == "file") inputs.embeddings = load_embeddings(c);
  return inputs;
}

TaskModel load_model(const std::filesystem::path& path, const RunConfig& c) {
  TaskModel model = TaskModel::load(path);
  if (model.config().implicit == ImplicitKind::kFile) {
    model.attach_embeddings(load_embeddings(c));
  }
  return model;
}

std::filesystem::path seeded_path(const std::filesystem::path& path,
                                  std::uint64_t seed, std::size_t seeds) {
  if (seeds <= 1) return path;
  std::filesystem::path out = path;
  out.replace_filename(path.stem().string() + ".seed" + std::to_string(seed) +
                       path.extension().string());
  return out;
}

SeedRun evaluate(const TaskModel& model, const AnnotatedCorpus& corpus) {
  switch (model.config().task) {
    case Task::kPd: return evaluate_pd(model, corpus);
    case Task::kApbp: return evaluate_apbp(model, corpus);
    case Task::kAnpp: return evaluate_anpp(model, corpus);
  }
  return {};
}

void emit_report(const EvalReport& report, const RunConfig& c,
                 std::ostream& out) {
  report.write_tsv(out);
  out << '\n';
  report.write_table(out);
  if (c.has_path("report")) report.save_report(c.path("report"));
}

int cmd_tokenize(const Flags& f, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "tokenize", c);
  const Lexicon lexicon = load_lexicon(c.path("lexicon"));
  const ConnectionMatrix conn = load_connection_matrix(c.path("connection"));
  lexicon.validate(conn);
  for (const std::string& line : input_lines(c, in)) {
    const auto paths = nbest(line, lexicon, conn, std::max<std::size_t>(1, f.nbest));
    for (std::size_t r = 0; r < paths.size(); ++r) {
      if (f.nbest > 1) out << "# rank " << r + 1 << " cost " << paths[r].cost << '\n';
      for (const Morpheme& m : paths[r].sentence.morphemes) {
        out << m.surface << '\t' << m.pos << '\t' << m.pronunciation << '\t'
            << m.lexical_accent << '\n';
      }
    }
    out << "EOS\n";
  }
  return kExitOk;
}

int cmd_train(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "train", c);
  const ModelConfig mc = c.model_config();
  const AnnotatedCorpus train = load_corpus(c.path("train"));
  std::optional<AnnotatedCorpus> dev;
  if (c.has_path("dev")) dev = load_corpus(c.path("dev"));
  std::optional<AnnotatedCorpus> test;
  if (c.has_path("test")) test = load_corpus(c.path("test"));
  const ModelInputs inputs = load_model_inputs(c);

  const EvalReport report = multi_seed(
      [&](std::uint64_t seed) {
        err << "[jafront] seed " << seed << '\n';
        TaskModel model = make_model(mc, train, inputs, seed);
        const nn::TrainHistory history =
            train_model(model, train, dev ? &*dev : nullptr, c.schedule, seed);
        for (const nn::EpochRecord& e : history.epochs) {
          err << "epoch " << e.epoch << " lr " << e.learning_rate << " loss "
              << e.train_loss << (dev ? " dev " : " select ") << e.metric
              << (e.improved ? " *" : "") << '\n';
        }
        if (c.has_path("model_out")) {
          model.save(seeded_path(c.path("model_out"), seed, c.seeds.size()));
        }
        SeedRun run = evaluate(model, test ? *test : dev ? *dev : train);
        if (dev) {
          run.values.insert(run.values.begin(),
                            {"dev_best", "all", history.best_metric});
        }
        return run;
      },
      c.seeds);
  emit_report(report, c, out);
  return kExitOk;
}

int cmd_predict(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "predict", c);
  const TaskModel model = load_model(c.path("model"), c);
  AnnotatedCorpus corpus = load_corpus(c.path("corpus"));
  for (AnnotatedSentence& a : corpus.sentences) {
    switch (model.config().task) {
      case Task::kPd:
        for (const PdPrediction& p : pd_predict(model, a.sentence)) {
          a.sentence.morphemes[p.position].set_pronunciation(p.pronunciation);
        }
        break;
      case Task::kApbp:
        a.boundaries = apbp_predict(model, a.sentence);
        break;
      case Task::kAnpp:
        a.nucleus_labels = anpp_predict(model, a.sentence, a.phrases()).labels;
        break;
    }
  }
  Sink sink(f.output, out);
  write_corpus(sink.stream(), corpus);
  return kExitOk;
}

SeedRun compare_corpora(const AnnotatedCorpus& predicted,
                        const AnnotatedCorpus& gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorKind::kAlignmentMismatch,
                "predicted corpus has " + std::to_string(predicted.size()) +
                    " sentences, gold has " + std::to_string(gold.size()));
  }
  std::vector<std::string> pd_pred, pd_gold;
  std::vector<std::vector<bool>> b_pred, b_gold;
  std::vector<Sentence> sentences;
  std::vector<std::vector<AccentPhrase>> n_pred, n_gold;
  std::vector<PitchSequence> p_pred, p_gold;
  bool same_spans = true;
  SeedRun run;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const AnnotatedSentence& p = predicted.sentences[s];
    const AnnotatedSentence& g = gold.sentences[s];
    if (p.sentence.id != g.sentence.id || p.sentence.size() != g.sentence.size()) {
      throw Error(ErrorKind::kAlignmentMismatch,
                  "sentence " + std::to_string(s) + " (" + g.sentence.id +
                      ") does not align");
    }
    for (std::size_t i = 0; i < g.sentence.size(); ++i) {
      if (g.sentence.morphemes[i].is_polyphone_target) {
        pd_pred.push_back(p.sentence.morphemes[i].pronunciation);
        pd_gold.push_back(g.sentence.morphemes[i].pronunciation);
      }
    }
    b_pred.push_back(p.boundaries);
    b_gold.push_back(g.boundaries);
    sentences.push_back(g.sentence);
    n_pred.push_back(p.phrases());
    n_gold.push_back(g.phrases());
    same_spans = same_spans && p.boundaries == g.boundaries;
    p_pred.push_back(p.pitch());
    p_gold.push_back(g.pitch());
    if (p_pred.back() != p_gold.back()) {
      run.errors.push_back(g.sentence.id + ": predicted " + p_pred.back().to_string() +
                           ", gold " + p_gold.back().to_string());
    }
  }
  run.values.push_back({"pd_accuracy", "all", pd_accuracy(pd_pred, pd_gold)});
  run.values.push_back({"apbp_f1", "all", apbp_f1(b_pred, b_gold)});
  run.values.push_back({"apbp_f1", "adjacent_nouns",
                        apbp_f1(b_pred, b_gold, BoundarySubset::kAdjacentNouns,
                                &sentences)});
  if (same_spans) {
    run.values.push_back({"anpp_accuracy", "all", anpp_accuracy(n_pred, n_gold)});
    run.values.push_back({"anpp_accuracy", "long_phrases",
                          anpp_accuracy(n_pred, n_gold, PhraseSubset::kLong)});
  }
  const ApScores ap = overall_ap(p_pred, p_gold);
  run.values.push_back({"snt_exact", "all", ap.snt_exact});
  run.values.push_back({"mora_accuracy", "all", ap.mora_accuracy});
  run.values.push_back({"excluded", "all", static_cast<double>(ap.excluded)});
  return run;
}

int cmd_eval(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "eval", c);
  const AnnotatedCorpus gold =
      load_corpus(c.has_path("test") ? c.path("test") : c.path("corpus"));
  EvalReport report;
  if (!f.predicted.empty()) {
    SeedRun run = compare_corpora(load_corpus(f.predicted), gold);
    run.seed = c.seeds.empty() ? 0 : c.seeds.front();
    report.add(std::move(run));
  } else {
    std::vector<std::filesystem::path> models;
    for (const std::string& m : f.models) models.emplace_back(m);
    if (models.empty()) models.push_back(c.path("model"));
    if (models.size() != c.seeds.size() && models.size() > 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  "give one seed per model (" + std::to_string(models.size()) +
                      " models, " + std::to_string(c.seeds.size()) + " seeds)");
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
      SeedRun run = evaluate(load_model(models[i], c), gold);
      run.seed = i < c.seeds.size() ? c.seeds[i] : i + 1;
      report.add(std::move(run));
    }
  }
  emit_report(report, c, out);
  return kExitOk;
}

int cmd_pipeline(const Flags& f, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "pipeline", c);
  std::optional<TaskModel> pd, apbp, anpp;
  if (c.has_path("pd_model")) pd = load_model(c.path("pd_model"), c);
  if (c.has_path("apbp_model")) apbp = load_model(c.path("apbp_model"), c);
  if (c.has_path("anpp_model")) anpp = load_model(c.path("anpp_model"), c);
  PipelineModels models;
  models.pd = pd ? &*pd : nullptr;
  models.apbp = apbp ? &*apbp : nullptr;
  models.anpp = anpp ? &*anpp : nullptr;

  std::optional<Lexicon> lexicon;
  std::optional<ConnectionMatrix> conn;
  if (c.has_path("lexicon")) lexicon = load_lexicon(c.path("lexicon"));
  if (c.has_path("connection")) conn = load_connection_matrix(c.path("connection"));
  const SandhiRuleTable rules = load_rules(c);
  RuleBoundaryModel boundaries;
  if (c.has_path("boundary_exceptions")) {
    load_boundary_exceptions(c.path("boundary_exceptions"), boundaries);
  }
  PipelineResources res;
  res.lexicon = lexicon ? &*lexicon : nullptr;
  res.connection = conn ? &*conn : nullptr;
  res.rules = &rules;
  res.boundaries = &boundaries;

  Sink sink(f.output, out);
  if (c.has_path("corpus")) {
    const AnnotatedCorpus corpus = load_corpus(c.path("corpus"));
    GoldInjection gold;
    gold.boundaries = f.gold_boundaries;
    gold.nuclei = f.gold_nuclei;
    gold.pronunciations = f.gold_pronunciations;
    for (const AnnotatedSentence& a : corpus.sentences) {
      write_result(sink.stream(), run_pipeline(a, models, res, gold));
    }
    EvalReport report;
    SeedRun run = evaluate_pipeline(models, res, gold, corpus);
    run.seed = c.seeds.empty() ? 0 : c.seeds.front();
    report.add(std::move(run));
    std::ostringstream table;
    emit_report(report, c, table);
    err << table.str();
    return kExitOk;
  }
  if (f.gold_boundaries || f.gold_nuclei || f.gold_pronunciations) {
    throw Error(ErrorKind::kInvalidArgument,
                "gold injection needs an annotated --corpus");
  }
  std::size_t n = 0;
  for (const std::string& line : input_lines(c, in)) {
    write_result(sink.stream(),
                 run_pipeline(line, "line" + std::to_string(++n), models, res));
  }
  return kExitOk;
}

int cmd_build_ngrams(const Flags& f, std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "build-ngrams", c);
  const Lexicon lexicon = load_lexicon(c.path("lexicon"));
  const ConnectionMatrix conn = load_connection_matrix(c.path("connection"));
  const NgramCounts counts = build_ngram_counts(c.path("text"), lexicon, conn);
  save_ngram_counts(c.path("ngrams"), counts);
  return kExitOk;
}

int cmd_train_charlm(const Flags& f, std::istream& in, std::ostream& err) {
  const RunConfig c = resolve(f);
  log_config(err, "train-charlm", c);
  CharLmConfig config;
  config.hidden = f.charlm_hidden;
  config.embedding_dim = f.charlm_embedding;
  config.epochs = f.charlm_epochs;
  config.learning_rate = f.charlm_lr;
  config.seed = c.seeds.empty() ? 1 : c.seeds.front();
  err << "[jafront] seed " << config.seed << '\n';
  std::vector<std::string> lines;
  for (std::string& line : input_lines(c, in)) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  CharLmHistory history;
  const CharLm model = train_charlm(lines, config, &history);
  err << "perplexity start " << history.initial_perplexity << '\n';
  for (std::size_t e = 0; e < history.perplexity.size(); ++e) {
    err << "epoch " << e + 1 << " perplexity " << history.perplexity[e] << '\n';
  }
  model.save(c.path("charlm"));
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Japanese TTS front-end: tokenization, pronunciation and accent"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;

  app.add_option("--config", f.config_path, "JSON run configuration");
  for (const std::string& name : kPathNames) {
    f.paths[name];
    f.path_options[name] =
        app.add_option(flag_name(name), f.paths[name], name + " path");
  }
  f.task_opt = app.add_option("--task", f.task, "pd | apbp | anpp");
  f.explicit_opt = app.add_flag("--explicit,!--no-explicit", f.explicit_features,
                                "explicit features on/off");
  f.implicit_opt = app.add_option("--implicit", f.implicit, "none | file | charlm");
  f.ef7_opt = app.add_flag("--ef7,!--no-ef7", f.ef7, "n-gram features (APBP)");
  f.hidden_opt = app.add_option("--hidden", f.hidden, "BiLSTM width");
  f.field_dim_opt = app.add_option("--field-dim", f.field_dim, "per-field embedding width");
  f.lr_opt = app.add_option("--lr", f.lr, "initial learning rate");
  f.batch_opt = app.add_option("--batch-size", f.batch_size, "mini-batch size");
  f.patience_opt = app.add_option("--patience", f.patience, "epochs before annealing");
  f.max_epochs_opt = app.add_option("--max-epochs", f.max_epochs, "epoch cap (0 = none)");
  f.seeds_opt = app.add_option("--seed", f.seeds, "random seed(s)");

  auto* tokenize_cmd = app.add_subcommand("tokenize", "segment text with the lexicon");
  tokenize_cmd->add_option("--nbest", f.nbest, "paths per line");
  auto* train_cmd = app.add_subcommand("train", "train a task model per seed");
  auto* predict_cmd = app.add_subcommand("predict", "annotate a corpus with a model");
  predict_cmd->add_option("--output", f.output, "output corpus (default stdout)");
  auto* eval_cmd = app.add_subcommand("eval", "score models or predictions");
  eval_cmd->add_option("--predicted", f.predicted, "predicted corpus");
  eval_cmd->add_option("--models", f.models, "one model per seed");
  auto* pipeline_cmd = app.add_subcommand("pipeline", "text to pitch sequence");
  pipeline_cmd->add_option("--output", f.output, "output file (default stdout)");
  pipeline_cmd->add_flag("--gold-boundaries", f.gold_boundaries, "bypass APBP");
  pipeline_cmd->add_flag("--gold-nuclei", f.gold_nuclei, "bypass ANPP");
  pipeline_cmd->add_flag("--gold-pronunciations", f.gold_pronunciations, "bypass PD");
  auto* ngram_cmd = app.add_subcommand("build-ngrams", "count n-grams of tokenized text");
  auto* charlm_cmd = app.add_subcommand("train-charlm", "train the character LM");
  charlm_cmd->add_option("--charlm-hidden", f.charlm_hidden, "LSTM width");
  charlm_cmd->add_option("--charlm-embedding", f.charlm_embedding, "character embedding width");
  charlm_cmd->add_option("--epochs", f.charlm_epochs, "passes over the text");
  charlm_cmd->add_option("--charlm-lr", f.charlm_lr, "learning rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tokenize_cmd) return cmd_tokenize(f, in, out, err);
    if (*train_cmd) return cmd_train(f, out, err);
    if (*predict_cmd) return cmd_predict(f, out, err);
    if (*eval_cmd) return cmd_eval(f, out, err);
    if (*pipeline_cmd) return cmd_pipeline(f, in, out, err);
    if (*ngram_cmd) return cmd_build_ngrams(f, err);
    if (*charlm_cmd) return cmd_train_charlm(f, in, err);
  } catch (const Error& e) {
    err << "jafront: " << e.what() << '\n';
    return e.kind() == ErrorKind::kInvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "jafront: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace jafront::cli
