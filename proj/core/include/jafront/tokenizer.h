#ifndef JAFRONT_TOKENIZER_H_
#define JAFRONT_TOKENIZER_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "jafront/lexicon.h"
#include "jafront/text.h"

namespace jafront {

struct TokenizerOptions {
  // Should exceed the cost of any dictionary path.
  std::int64_t unknown_cost = 10000;
  int unknown_left_id = 0;
  int unknown_right_id = 0;
  bool normalize = true;
};

struct Analysis {
  Sentence sentence;
  std::int64_t cost = 0;
  // Lexicon entry index per morpheme; -1 marks an unknown-word node.
  std::vector<std::int64_t> entries;
};

// Minimum-cost segmentation of `text`. Path cost is the sum of entry costs
// plus connection costs between neighbours and the begin/end markers
// (context id 0). Equal-cost paths are ordered by fewer morphemes, then by
// the lexicographically smaller surface sequence. Characters with no
// dictionary match at their position become single-character unknown words.
Sentence tokenize(std::string_view text, const Lexicon& lexicon,
                  const ConnectionMatrix& conn,
                  const TokenizerOptions& options = {});

// Up to n distinct paths in the same total order as tokenize().
std::vector<Analysis> nbest(std::string_view text, const Lexicon& lexicon,
                            const ConnectionMatrix& conn, std::size_t n,
                            const TokenizerOptions& options = {});

// Best of the n-best paths whose joined pronunciation equals `reading`, or
// nullopt when none does.
std::optional<Analysis> match_reading(std::string_view text,
                                      std::string_view reading,
                                      const Lexicon& lexicon,
                                      const ConnectionMatrix& conn,
                                      std::size_t n,
                                      const TokenizerOptions& options = {});

// Cost of a given morpheme path under the same model, for oracles and
// diagnostics. `entries` as in Analysis.
std::int64_t path_cost(const std::vector<std::int64_t>& entries,
                       const Lexicon& lexicon, const ConnectionMatrix& conn,
                       const TokenizerOptions& options = {});

}  // namespace jafront

#endif  // JAFRONT_TOKENIZER_H_
