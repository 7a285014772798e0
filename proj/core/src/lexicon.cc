#include "jafront/lexicon.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "jafront/error.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

template <typename Int>
Int parse_int(std::string_view field, std::string_view what,
              std::string_view source, std::size_t line) {
  Int value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    std::ostringstream msg;
    msg << source << ":" << line << ": bad " << what << " '" << field << "'";
    throw Error(ErrorKind::kParse, msg.str());
  }
  return value;
}

}  // namespace

ConnectionMatrix::ConnectionMatrix(std::size_t rows, std::size_t cols,
                                   std::vector<std::int64_t> costs)
    : rows_(rows), cols_(cols), costs_(std::move(costs)) {
  if (rows_ == 0 || cols_ == 0 || costs_.size() != rows_ * cols_) {
    throw Error(ErrorKind::kInvalidArgument,
                "connection matrix must be rectangular and non-empty");
  }
}

ConnectionMatrix ConnectionMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ConnectionMatrix(rows, cols,
                          std::vector<std::int64_t>(rows * cols, 0));
}

ConnectionMatrix read_connection_matrix(std::istream& in) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(in >> rows >> cols)) {
    throw Error(ErrorKind::kParse, "connection matrix header \"R C\" missing");
  }
  std::vector<std::int64_t> costs(rows * cols);
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!(in >> costs[i])) {
      throw Error(ErrorKind::kParse, "connection matrix has " +
                                         std::to_string(i) + " of " +
                                         std::to_string(costs.size()) +
                                         " entries");
    }
  }
  return ConnectionMatrix(rows, cols, std::move(costs));
}

ConnectionMatrix load_connection_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_connection_matrix(in);
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  for (LexiconEntry& e : entries) add(std::move(e));
}

void Lexicon::add(LexiconEntry entry) {
  if (entry.surface.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "lexicon entry with empty surface");
  }
  entry.payload.surface = entry.surface;
  if (entry.payload.morae.empty() && !entry.payload.pronunciation.empty()) {
    entry.payload.morae = segment_morae(entry.payload.pronunciation);
  }
  max_length_ = std::max(max_length_, utf8::length(entry.surface));
  by_surface_[entry.surface].push_back(entries_.size());
  entries_.push_back(std::move(entry));
}

const std::vector<std::size_t>& Lexicon::lookup(std::string_view surface) const {
  static const std::vector<std::size_t> kNone;
  const auto it = by_surface_.find(surface);
  return it == by_surface_.end() ? kNone : it->second;
}

const LexiconEntry* Lexicon::find(std::string_view surface,
                                  std::string_view pronunciation) const {
  for (std::size_t i : lookup(surface)) {
    if (entries_[i].payload.pronunciation == pronunciation) return &entries_[i];
  }
  return nullptr;
}

void Lexicon::validate(const ConnectionMatrix& conn) const {
  for (const LexiconEntry& e : entries_) {
    if (e.left_id < 0 || e.right_id < 0 ||
        static_cast<std::size_t>(e.left_id) >= conn.cols() ||
        static_cast<std::size_t>(e.right_id) >= conn.rows()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "entry '" + e.surface + "' has context ids outside the " +
                      std::to_string(conn.rows()) + "x" +
                      std::to_string(conn.cols()) + " matrix");
    }
  }
}

Lexicon read_lexicon(std::istream& in, std::string_view source) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> f = utf8::split(line, '\t');
    if (f.size() < 11) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": expected 11 columns, got "
          << f.size();
      throw Error(ErrorKind::kMissingField, msg.str());
    }
    LexiconEntry e;
    e.surface = f[0];
    e.left_id = parse_int<int>(f[1], "left_id", source, line_no);
    e.right_id = parse_int<int>(f[2], "right_id", source, line_no);
    e.cost = parse_int<std::int64_t>(f[3], "cost", source, line_no);
    Morpheme& m = e.payload;
    m.pos = f[4];
    m.pronunciation = f[5];
    m.morae = segment_morae(f[5]);
    m.lexical_accent = parse_int<int>(f[6], "lexical_accent", source, line_no);
    m.accent_combination_type = f[7];
    m.conjugation_form = f[8];
    m.conjugation_type = f[9];
    m.word_type = f[10];
    lexicon.add(std::move(e));
  }
  return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_lexicon(in, path.string());
}

}  // namespace jafront
