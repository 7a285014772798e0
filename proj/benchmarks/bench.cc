#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "jafront/lexicon.h"
#include "jafront/nn/crf.h"
#include "jafront/nn/lstm.h"
#include "jafront/nn/rng.h"
#include "jafront/tokenizer.h"

namespace {

using namespace jafront;

std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(JAFRONT_BENCH_DATA_DIR) / name;
}

nn::Matrix<float> random_matrix(std::size_t r, std::size_t c, nn::Rng& rng) {
  nn::Matrix<float> m(r, c);
  for (float& v : m.values()) v = static_cast<float>(rng.uniform(-1, 1));
  return m;
}

void BM_TokenizeToyText(benchmark::State& state) {
  const Lexicon lexicon = load_lexicon(data("toy_lexicon.tsv"));
  const ConnectionMatrix conn = load_connection_matrix(data("toy_connection.txt"));
  std::vector<std::string> lines;
  std::ifstream in(data("toy_text.txt"));
  std::size_t bytes = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    bytes += line.size();
    lines.push_back(line);
  }
  for (auto _ : state) {
    for (const std::string& line : lines) {
      benchmark::DoNotOptimize(tokenize(line, lexicon, conn));
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_TokenizeToyText);

void BM_NbestToyText(benchmark::State& state) {
  const Lexicon lexicon = load_lexicon(data("toy_lexicon.tsv"));
  const ConnectionMatrix conn = load_connection_matrix(data("toy_connection.txt"));
  std::ifstream in(data("toy_text.txt"));
  std::string line;
  std::getline(in, line);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nbest(line, lexicon, conn, state.range(0)));
  }
}
BENCHMARK(BM_NbestToyText)->Arg(1)->Arg(5)->Arg(20);

void BM_CrfViterbi(benchmark::State& state) {
  nn::Rng rng(1);
  const auto labels = static_cast<std::size_t>(state.range(1));
  nn::Crf<float> crf("crf", labels);
  crf.init(rng);
  const auto em = random_matrix(static_cast<std::size_t>(state.range(0)), labels, rng);
  for (auto _ : state) benchmark::DoNotOptimize(crf.viterbi(em));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrfViterbi)->Args({20, 2})->Args({20, 12})->Args({100, 12});

void BM_CrfLogPartition(benchmark::State& state) {
  nn::Rng rng(2);
  nn::Crf<float> crf("crf", 12);
  crf.init(rng);
  const auto em = random_matrix(static_cast<std::size_t>(state.range(0)), 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(crf.log_partition(em));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrfLogPartition)->Arg(20)->Arg(100);

void BM_BiLstmForward(benchmark::State& state) {
  nn::Rng rng(3);
  const auto hidden = static_cast<std::size_t>(state.range(1));
  nn::BiLstm<float> lstm("bilstm", 64, hidden);
  lstm.init(rng);
  const auto x = random_matrix(static_cast<std::size_t>(state.range(0)), 64, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lstm.forward(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BiLstmForward)->Args({20, 32})->Args({20, 128})->Args({50, 512});

}  // namespace

BENCHMARK_MAIN();
