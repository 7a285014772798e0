#ifndef JAFRONT_TESTS_LATTICE_CHECKS_H_
#define JAFRONT_TESTS_LATTICE_CHECKS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "builders.h"
#include "jafront/lexicon.h"
#include "jafront/nn/rng.h"
#include "jafront/tokenizer.h"
#include "lattice_oracle.h"

namespace checks {

inline jafront::LexiconEntry lexicon_entry(const std::string& surface,
                                           std::int64_t cost,
                                           const std::string& pron, int left = 1,
                                           int right = 1,
                                           const std::string& pos = "noun") {
  jafront::LexiconEntry e;
  e.surface = surface;
  e.left_id = left;
  e.right_id = right;
  e.cost = cost;
  e.payload = testing_support::word(surface, pos, pron);
  return e;
}

inline std::vector<std::string> surfaces(const jafront::Sentence& s) {
  std::vector<std::string> out;
  for (const auto& m : s.morphemes) out.push_back(m.surface);
  return out;
}

struct LatticeCheck {
  int lexicons = 0;
  int best_mismatches = 0;      // tokenize() is not the oracle minimum
  int order_mismatches = 0;     // n-best differs from the sorted enumeration
  int incomplete = 0;           // n-best missed or invented a path
  int cost_mismatches = 0;      // reported cost differs from path_cost()
  std::string first_failure;
};

// Random three-letter lexicons over short texts, each lattice capped at
// `max_nodes`, against exhaustive path enumeration.
inline LatticeCheck random_lexicons_against_oracle(int lexicons, std::uint64_t seed,
                                                   std::size_t max_nodes = 12) {
  jafront::nn::Rng rng(seed);
  const std::vector<std::string> alphabet = {"あ", "い", "う"};
  jafront::TokenizerOptions opts;
  opts.unknown_cost = 60;  // low enough to compete with dictionary paths
  LatticeCheck out;
  while (out.lexicons < lexicons) {
    std::vector<std::string> text;
    const std::size_t len = 2 + rng.below(5);
    for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng.below(3)]);
    oracle::Model m;
    m.unknown_cost = opts.unknown_cost;
    jafront::Lexicon lex;
    const std::size_t words = 2 + rng.below(5);
    for (std::size_t w = 0; w < words; ++w) {
      const std::size_t wl = 1 + rng.below(3);
      const std::size_t at = rng.below(len);
      std::vector<std::string> chars(text.begin() + static_cast<long>(at),
                                     text.begin() + static_cast<long>(std::min(len, at + wl)));
      std::string s;
      for (const auto& c : chars) s += c;
      const int left = static_cast<int>(rng.below(3));
      const int right = static_cast<int>(rng.below(3));
      const std::int64_t cost = static_cast<std::int64_t>(rng.below(40));
      lex.add(lexicon_entry(s, cost, "ア", left, right));
      m.words.push_back({chars, left, right, cost});
    }
    m.conn.assign(3, std::vector<std::int64_t>(3));
    std::vector<std::int64_t> flat;
    for (auto& row : m.conn) {
      for (auto& v : row) {
        v = static_cast<std::int64_t>(rng.below(20));
        flat.push_back(v);
      }
    }
    if (oracle::node_count(text, m) > max_nodes) continue;
    ++out.lexicons;
    const jafront::ConnectionMatrix conn(3, 3, flat);
    std::string joined;
    for (const auto& c : text) joined += c;
    auto fail = [&](int& counter, const std::string& what) {
      ++counter;
      if (out.first_failure.empty()) out.first_failure = joined + ": " + what;
    };

    const auto expected = oracle::all_paths(text, m);
    if (surfaces(jafront::tokenize(joined, lex, conn, opts)) != expected.front().surfaces) {
      fail(out.best_mismatches, "cheapest path differs");
    }
    const auto got = jafront::nbest(joined, lex, conn, expected.size() + 3, opts);
    if (got.size() != expected.size()) {
      fail(out.incomplete, std::to_string(got.size()) + " paths, expected " +
                               std::to_string(expected.size()));
      continue;
    }
    if (got.front().cost != expected.front().cost) {
      fail(out.best_mismatches, "best cost differs");
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].cost != expected[i].cost ||
          surfaces(got[i].sentence) != expected[i].surfaces) {
        fail(out.order_mismatches, "rank " + std::to_string(i + 1) + " differs");
        break;
      }
    }
    for (const auto& a : got) {
      if (jafront::path_cost(a.entries, lex, conn, opts) != a.cost) {
        fail(out.cost_mismatches, "cost disagrees with path_cost");
        break;
      }
    }
  }
  return out;
}

}  // namespace checks

#endif  // JAFRONT_TESTS_LATTICE_CHECKS_H_
