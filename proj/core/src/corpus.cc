#include "jafront/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jafront/error.h"
#include "jafront/normalize.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

constexpr std::size_t kColumns = 11;

[[noreturn]] void fail(ErrorKind kind, std::string_view source,
                       std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(kind, msg.str());
}

int parse_int(std::string_view field, std::string_view source,
              std::size_t line) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorKind::kParse, source, line,
         "expected an integer, got '" + std::string(field) + "'");
  }
  return value;
}

class CorpusReader {
 public:
  CorpusReader(std::istream& in, std::string_view source)
      : in_(in), source_(source) {}

  AnnotatedCorpus read() {
    AnnotatedCorpus corpus;
    std::vector<std::pair<std::size_t, std::string>> block;
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) {
        if (!block.empty()) corpus.sentences.push_back(parse_block(block));
        block.clear();
        continue;
      }
      block.emplace_back(line_no_, line);
    }
    if (!block.empty()) corpus.sentences.push_back(parse_block(block));
    return corpus;
  }

 private:
  AnnotatedSentence parse_block(
      const std::vector<std::pair<std::size_t, std::string>>& block) {
    const auto& [id_line, header] = block.front();
    if (header.rfind("#id ", 0) != 0) {
      fail(ErrorKind::kMissingField, source_, id_line,
           "sentence must start with '#id <sentence-id>'");
    }
    AnnotatedSentence out;
    out.sentence.id = header.substr(4);
    if (block.size() < 2) {
      fail(ErrorKind::kMissingField, source_, id_line,
           "sentence '" + out.sentence.id + "' has no raw text line");
    }
    out.sentence.raw = block[1].second;

    for (std::size_t i = 2; i < block.size(); ++i) {
      const auto& [line, text] = block[i];
      const std::vector<std::string> f = utf8::split(text, '\t');
      if (f.size() < kColumns) {
        fail(ErrorKind::kMissingField, source_, line,
             "expected " + std::to_string(kColumns) + " columns, got " +
                 std::to_string(f.size()));
      }
      Morpheme m;
      m.surface = f[0];
      m.pos = f[1];
      try {
        m.set_pronunciation(f[2]);
      } catch (const Error& e) {
        fail(e.kind(), source_, line, e.what());
      }
      m.lexical_accent = parse_int(f[3], source_, line);
      if (m.lexical_accent < 0 ||
          static_cast<std::size_t>(m.lexical_accent) > m.mora_count()) {
        fail(ErrorKind::kLabelOutOfRange, source_, line,
             "lexical accent " + f[3] + " exceeds " +
                 std::to_string(m.mora_count()) + " morae of '" + m.surface +
                 "'");
      }
      m.accent_combination_type = f[4];
      m.conjugation_form = f[5];
      m.conjugation_type = f[6];
      m.word_type = f[7];

      if (f[8] != "0" && f[8] != "1") {
        fail(ErrorKind::kDanglingBoundary, source_, line,
             "boundary flag must be 0 or 1, got '" + f[8] + "'");
      }
      const bool boundary = f[8] == "1";
      if (out.sentence.morphemes.empty() && !boundary) {
        fail(ErrorKind::kDanglingBoundary, source_, line,
             "first word of a sentence must open an accent phrase");
      }

      NucleusLabel label = NucleusLabel::keep();
      try {
        label = NucleusLabel::parse(f[9]);
      } catch (const Error& e) {
        fail(e.kind(), source_, line, e.what());
      }
      if (label.is_nucleus() &&
          static_cast<std::size_t>(label.k()) > m.mora_count()) {
        fail(ErrorKind::kLabelOutOfRange, source_, line,
             "nucleus label " + f[9] + " exceeds " +
                 std::to_string(m.mora_count()) + " morae of '" + m.surface +
                 "'");
      }
      if (f[10] != "-") {
        m.is_polyphone_target = true;
        m.polyphone_lemma = f[10];
      }
      out.sentence.morphemes.push_back(std::move(m));
      out.boundaries.push_back(boundary);
      out.nucleus_labels.push_back(label);
    }

    if (out.sentence.surface() != normalize_text(out.sentence.raw)) {
      fail(ErrorKind::kSurfaceMismatch, source_, block[1].first,
           "surfaces \"" + out.sentence.surface() +
               "\" do not spell the normalized raw text");
    }
    return out;
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

}  // namespace

std::vector<AccentPhrase> AnnotatedSentence::phrases() const {
  std::vector<AccentPhrase> out = phrases_from_boundaries(boundaries);
  resolve_all(out, sentence, nucleus_labels);
  return out;
}

PitchSequence AnnotatedSentence::pitch() const {
  return render_pitch(phrases(), sentence);
}

AnnotatedCorpus read_corpus(std::istream& in, std::string_view source) {
  return CorpusReader(in, source).read();
}

AnnotatedCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus " + path.string());
  return read_corpus(in, path.string());
}

void write_corpus(std::ostream& out, const AnnotatedCorpus& corpus) {
  bool first = true;
  for (const AnnotatedSentence& s : corpus.sentences) {
    if (!first) out << '\n';
    first = false;
    out << "#id " << s.sentence.id << '\n' << s.sentence.raw << '\n';
    for (std::size_t i = 0; i < s.sentence.size(); ++i) {
      const Morpheme& m = s.sentence.morphemes[i];
      out << m.surface << '\t' << m.pos << '\t' << m.pronunciation << '\t'
          << m.lexical_accent << '\t' << m.accent_combination_type << '\t'
          << m.conjugation_form << '\t' << m.conjugation_type << '\t'
          << m.word_type << '\t' << (s.boundaries[i] ? 1 : 0) << '\t'
          << s.nucleus_labels[i].to_string() << '\t'
          << (m.polyphone_lemma ? *m.polyphone_lemma : "-") << '\n';
    }
  }
}

void save_corpus(const std::filesystem::path& path,
                 const AnnotatedCorpus& corpus) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  write_corpus(out, corpus);
}

std::pair<AnnotatedCorpus, AnnotatedCorpus> split_corpus(
    const AnnotatedCorpus& corpus, std::size_t stride, std::size_t phase) {
  if (stride == 0) throw Error(ErrorKind::kInvalidArgument, "stride 0");
  std::pair<AnnotatedCorpus, AnnotatedCorpus> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto& part = (i % stride == phase) ? out.second : out.first;
    part.sentences.push_back(corpus.sentences[i]);
  }
  return out;
}

void CandidateInventory::add(const std::string& lemma,
                             const std::string& pronunciation) {
  auto& list = lemmas_[lemma];
  const auto it = std::lower_bound(list.begin(), list.end(), pronunciation);
  if (it == list.end() || *it != pronunciation) list.insert(it, pronunciation);
}

CandidateInventory CandidateInventory::from_corpus(
    const AnnotatedCorpus& corpus) {
  CandidateInventory inv;
  for (const AnnotatedSentence& s : corpus.sentences) {
    for (const Morpheme& m : s.sentence.morphemes) {
      if (m.is_polyphone_target) {
        inv.add(m.polyphone_lemma.value_or(m.surface), m.pronunciation);
      }
    }
  }
  return inv;
}

bool CandidateInventory::contains(std::string_view lemma) const {
  return lemmas_.find(lemma) != lemmas_.end();
}

const std::vector<std::string>& CandidateInventory::candidates(
    std::string_view lemma) const {
  const auto it = lemmas_.find(lemma);
  if (it == lemmas_.end()) {
    throw Error(ErrorKind::kUnknownLemma,
                "no candidate pronunciations for '" + std::string(lemma) + "'");
  }
  return it->second;
}

}  // namespace jafront
