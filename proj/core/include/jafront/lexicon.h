#ifndef JAFRONT_LEXICON_H_
#define JAFRONT_LEXICON_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jafront/text.h"

namespace jafront {

struct LexiconEntry {
  std::string surface;
  int left_id = 0;
  int right_id = 0;
  std::int64_t cost = 0;
  Morpheme payload;  // surface and morae filled in
};

// Connection costs indexed by (right_id of the left word, left_id of the
// right word). Context id 0 doubles as the sentence begin/end marker.
class ConnectionMatrix {
 public:
  ConnectionMatrix() = default;
  ConnectionMatrix(std::size_t rows, std::size_t cols,
                   std::vector<std::int64_t> costs);

  // All-zero matrix.
  static ConnectionMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t cost(int right_id, int left_id) const {
    return costs_[static_cast<std::size_t>(right_id) * cols_ +
                  static_cast<std::size_t>(left_id)];
  }
  void set(int right_id, int left_id, std::int64_t value) {
    costs_[static_cast<std::size_t>(right_id) * cols_ +
           static_cast<std::size_t>(left_id)] = value;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> costs_;
};

// First line "R C", then R*C integers row-major.
ConnectionMatrix load_connection_matrix(const std::filesystem::path& path);
ConnectionMatrix read_connection_matrix(std::istream& in);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  void add(LexiconEntry entry);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t max_length() const { return max_length_; }

  // Indices of entries whose surface equals `surface`, in file order.
  const std::vector<std::size_t>& lookup(std::string_view surface) const;

  // Entry with the given surface and pronunciation, if any.
  const LexiconEntry* find(std::string_view surface,
                           std::string_view pronunciation) const;

  // Throws kInvalidArgument when an entry's context ids fall outside the
  // matrix.
  void validate(const ConnectionMatrix& conn) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_surface_;
  std::size_t max_length_ = 0;  // in code points
};

// UTF-8 TSV: surface, left_id, right_id, cost, pos, pronunciation,
// lexical_accent, accent_combination_type, conjugation_form,
// conjugation_type, word_type. Blank lines and lines starting with '#' are
// skipped.
Lexicon load_lexicon(const std::filesystem::path& path);
Lexicon read_lexicon(std::istream& in, std::string_view source = "<stream>");

}  // namespace jafront

#endif  // JAFRONT_LEXICON_H_
