#include "jafront/tokenizer.h"

#include <algorithm>
#include <string>

#include "jafront/error.h"
#include "jafront/normalize.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

constexpr std::int64_t kUnknownEntry = -1;

struct Node {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::int64_t entry = kUnknownEntry;
  std::string surface;
  int left_id = 0;
  int right_id = 0;
  std::int64_t cost = 0;
};

// A partial path ending at some node. prev_node == -1 denotes the begin
// marker.
struct Hyp {
  std::int64_t cost = 0;
  std::size_t count = 0;
  int prev_node = -1;
  std::size_t prev_rank = 0;
};

class Lattice {
 public:
  Lattice(std::string_view text, const Lexicon& lexicon,
          const TokenizerOptions& options)
      : chars_(utf8::split_chars(text)) {
    const std::size_t length = chars_.size();
    starting_at_.resize(length + 1);
    ending_at_.resize(length + 1);
    for (std::size_t begin = 0; begin < length; ++begin) {
      bool matched = false;
      std::string piece;
      const std::size_t limit = std::min(length, begin + lexicon.max_length());
      for (std::size_t end = begin + 1; end <= limit; ++end) {
        piece += chars_[end - 1];
        for (std::size_t idx : lexicon.lookup(piece)) {
          const LexiconEntry& e = lexicon.entries()[idx];
          add(Node{begin, end, static_cast<std::int64_t>(idx), piece,
                   e.left_id, e.right_id, e.cost});
          matched = true;
        }
      }
      if (!matched) {
        add(Node{begin, begin + 1, kUnknownEntry, chars_[begin],
                 options.unknown_left_id, options.unknown_right_id,
                 options.unknown_cost});
      }
    }
  }

  std::size_t length() const { return chars_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& ending_at(std::size_t pos) const {
    return ending_at_[pos];
  }

 private:
  void add(Node node) {
    const int id = static_cast<int>(nodes_.size());
    starting_at_[node.begin].push_back(id);
    ending_at_[node.end].push_back(id);
    nodes_.push_back(std::move(node));
  }

  std::vector<std::string> chars_;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> starting_at_;
  std::vector<std::vector<int>> ending_at_;
};

class KBestSearch {
 public:
  KBestSearch(const Lattice& lattice, const ConnectionMatrix& conn,
              std::size_t k)
      : lattice_(lattice), conn_(conn), k_(k), hyps_(lattice.nodes().size()) {}

  std::vector<Hyp> run() {
    // Nodes are created in order of their start position, so every
    // predecessor is finished before its successors are expanded.
    const auto& nodes = lattice_.nodes();
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      hyps_[v] = extend(nodes[v].begin, nodes[v].left_id, nodes[v].cost);
    }
    return extend(lattice_.length(), 0, 0);
  }

  std::vector<int> path(const Hyp& last) const {
    std::vector<int> out;
    int node = last.prev_node;
    std::size_t rank = last.prev_rank;
    while (node >= 0) {
      out.push_back(node);
      const Hyp& h = hyps_[static_cast<std::size_t>(node)][rank];
      node = h.prev_node;
      rank = h.prev_rank;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  // Candidates for a node starting at `pos` with left context `left_id` and
  // own cost `own_cost`, truncated to the k best.
  std::vector<Hyp> extend(std::size_t pos, int left_id, std::int64_t own_cost) {
    std::vector<Hyp> candidates;
    if (pos == 0) {
      candidates.push_back(Hyp{conn_.cost(0, left_id) + own_cost, 1, -1, 0});
    } else {
      for (int u : lattice_.ending_at(pos)) {
        const auto& list = hyps_[static_cast<std::size_t>(u)];
        const int right_id = lattice_.nodes()[static_cast<std::size_t>(u)].right_id;
        for (std::size_t r = 0; r < list.size(); ++r) {
          candidates.push_back(Hyp{
              list[r].cost + conn_.cost(right_id, left_id) + own_cost,
              list[r].count + 1, u, r});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [this](const Hyp& a, const Hyp& b) { return less(a, b); });
    if (candidates.size() > k_) candidates.resize(k_);
    return candidates;
  }

  std::vector<std::string> surfaces(const Hyp& h) const {
    std::vector<std::string> out;
    for (int n : path(h)) {
      out.push_back(lattice_.nodes()[static_cast<std::size_t>(n)].surface);
    }
    return out;
  }

  bool less(const Hyp& a, const Hyp& b) const {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.count != b.count) return a.count < b.count;
    if (a.prev_node == b.prev_node && a.prev_rank == b.prev_rank) return false;
    const auto sa = surfaces(a);
    const auto sb = surfaces(b);
    if (sa != sb) return sa < sb;
    // Same surfaces through different entries: fall back to node ids.
    return std::tie(a.prev_node, a.prev_rank) <
           std::tie(b.prev_node, b.prev_rank);
  }

  const Lattice& lattice_;
  const ConnectionMatrix& conn_;
  std::size_t k_;
  std::vector<std::vector<Hyp>> hyps_;
};

Morpheme unknown_morpheme(const std::string& ch) {
  Morpheme m;
  m.surface = ch;
  m.pos = std::string(kUnknownPos);
  const std::string kana = utf8::hiragana_to_katakana(ch);
  try {
    m.morae = segment_morae(kana);
    m.pronunciation = kana;
  } catch (const Error&) {
    m.morae.clear();
    m.pronunciation.clear();
  }
  return m;
}

}  // namespace

std::vector<Analysis> nbest(std::string_view text, const Lexicon& lexicon,
                            const ConnectionMatrix& conn, std::size_t n,
                            const TokenizerOptions& options) {
  if (n == 0) return {};
  const std::string normalized =
      options.normalize ? normalize_text(text) : std::string(text);
  const Lattice lattice(normalized, lexicon, options);
  KBestSearch search(lattice, conn, n);
  const std::vector<Hyp> finals = search.run();

  std::vector<Analysis> out;
  out.reserve(finals.size());
  for (const Hyp& h : finals) {
    Analysis a;
    a.cost = h.cost;
    a.sentence.raw = std::string(text);
    for (int id : search.path(h)) {
      const Node& node = lattice.nodes()[static_cast<std::size_t>(id)];
      a.entries.push_back(node.entry);
      if (node.entry == kUnknownEntry) {
        a.sentence.morphemes.push_back(unknown_morpheme(node.surface));
      } else {
        a.sentence.morphemes.push_back(
            lexicon.entries()[static_cast<std::size_t>(node.entry)].payload);
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

Sentence tokenize(std::string_view text, const Lexicon& lexicon,
                  const ConnectionMatrix& conn,
                  const TokenizerOptions& options) {
  std::vector<Analysis> best = nbest(text, lexicon, conn, 1, options);
  return std::move(best.front().sentence);
}

std::int64_t path_cost(const std::vector<std::int64_t>& entries,
                       const Lexicon& lexicon, const ConnectionMatrix& conn,
                       const TokenizerOptions& options) {
  std::int64_t total = 0;
  int prev_right = 0;
  for (std::int64_t idx : entries) {
    int left = options.unknown_left_id;
    int right = options.unknown_right_id;
    std::int64_t own = options.unknown_cost;
    if (idx != kUnknownEntry) {
      const LexiconEntry& e = lexicon.entries().at(static_cast<std::size_t>(idx));
      left = e.left_id;
      right = e.right_id;
      own = e.cost;
    }
    total += conn.cost(prev_right, left) + own;
    prev_right = right;
  }
  return total + conn.cost(prev_right, 0);
}

std::optional<Analysis> match_reading(std::string_view text,
                                      std::string_view reading,
                                      const Lexicon& lexicon,
                                      const ConnectionMatrix& conn,
                                      std::size_t n,
                                      const TokenizerOptions& options) {
  for (Analysis& a : nbest(text, lexicon, conn, n, options)) {
    std::string joined;
    for (const Morpheme& m : a.sentence.morphemes) joined += m.pronunciation;
    if (joined == reading) return std::move(a);
  }
  return std::nullopt;
}

}  // namespace jafront
