#include "jafront/charlm.h"

#include <cmath>
#include <numeric>
#include <set>

#include "jafront/error.h"
#include "jafront/nn/crf.h"
#include "jafront/nn/rng.h"
#include "jafront/utf8.h"

namespace jafront {
namespace {

constexpr std::string_view kCharLmMagic = "JTCL";
constexpr std::uint32_t kCharLmVersion = 1;

}  // namespace

CharVocabulary::CharVocabulary() : symbols_{"<unk>", "<s>", "</s>"} {
  for (std::size_t i = 0; i < symbols_.size(); ++i) index_.emplace(symbols_[i], i);
}

CharVocabulary CharVocabulary::from_symbols(std::vector<std::string> symbols) {
  if (symbols.size() < 3) {
    throw Error(ErrorKind::kCorrupt, "character vocabulary lacks specials");
  }
  CharVocabulary v;
  v.symbols_ = std::move(symbols);
  v.index_.clear();
  for (std::size_t i = 0; i < v.symbols_.size(); ++i) {
    v.index_.emplace(v.symbols_[i], i);
  }
  return v;
}

CharVocabulary CharVocabulary::build(const std::vector<std::string>& lines) {
  std::set<std::string> chars;
  for (const std::string& line : lines) {
    for (std::string& ch : utf8::split_chars(line)) chars.insert(std::move(ch));
  }
  std::vector<std::string> symbols{"<unk>", "<s>", "</s>"};
  for (const std::string& ch : chars) {
    if (ch != "<unk>" && ch != "<s>" && ch != "</s>") symbols.push_back(ch);
  }
  return from_symbols(std::move(symbols));
}

std::size_t CharVocabulary::index(std::string_view ch) const {
  if (ch == "<unk>" || ch == "<s>" || ch == "</s>") return kUnk;
  const auto it = index_.find(ch);
  return it == index_.end() ? kUnk : it->second;
}

CharLm::CharLm(CharVocabulary vocabulary, std::size_t embedding_dim,
               std::size_t hidden)
    : vocab_(std::move(vocabulary)) {
  if (hidden == 0 || embedding_dim == 0) {
    throw Error(ErrorKind::kInvalidArgument, "char LM dims must be positive");
  }
  const std::size_t v = vocab_.size();
  fwd_ = Direction{nn::Embedding<float>("charlm.fwd.embed", v, embedding_dim),
                   nn::Lstm<float>("charlm.fwd.lstm", embedding_dim, hidden),
                   nn::Linear<float>("charlm.fwd.out", hidden, v)};
  bwd_ = Direction{nn::Embedding<float>("charlm.bwd.embed", v, embedding_dim),
                   nn::Lstm<float>("charlm.bwd.lstm", embedding_dim, hidden),
                   nn::Linear<float>("charlm.bwd.out", hidden, v)};
}

void CharLm::init(std::uint64_t seed) {
  nn::Rng rng(seed);
  for (Direction* d : {&fwd_, &bwd_}) {
    d->embed.init(rng);
    d->lstm.init(rng);
    d->output.init(rng);
  }
}

std::vector<std::size_t> CharLm::encode(std::string_view text,
                                        bool reversed) const {
  std::vector<std::string> chars = utf8::split_chars(text);
  if (reversed) std::reverse(chars.begin(), chars.end());
  std::vector<std::size_t> ids;
  ids.reserve(chars.size() + 2);
  ids.push_back(CharVocabulary::kBegin);
  for (const std::string& ch : chars) ids.push_back(vocab_.index(ch));
  ids.push_back(CharVocabulary::kEnd);
  return ids;
}

nn::Matrix<float> CharLm::inputs(const Direction& d,
                                 const std::vector<std::size_t>& ids) const {
  // The final </s> is only ever a target.
  const std::size_t steps = ids.size() - 1;
  nn::Matrix<float> x(steps, d.embed.dim());
  for (std::size_t t = 0; t < steps; ++t) d.embed.lookup(ids[t], x.row(t));
  return x;
}

EmbeddingMatrix CharLm::embed(const Sentence& sentence) const {
  const std::string text = sentence.surface();
  const std::size_t n = utf8::length(text);
  const nn::Matrix<float> fh =
      fwd_.lstm.forward(inputs(fwd_, encode(text, false)), false).hidden;
  const nn::Matrix<float> bh =
      bwd_.lstm.forward(inputs(bwd_, encode(text, true)), false).hidden;
  const std::size_t h = hidden_dim();
  EmbeddingMatrix out(sentence.size(), 2 * h);
  std::size_t begin = 0;
  for (std::size_t w = 0; w < sentence.size(); ++w) {
    const std::size_t end = begin + utf8::length(sentence.morphemes[w].surface);
    // Row j of either direction holds the state after its j-th character.
    const std::size_t fwd_row = end;
    const std::size_t bwd_row = n - begin;
    for (std::size_t j = 0; j < h; ++j) {
      out(w, j) = fh(fwd_row, j);
      out(w, h + j) = bh(bwd_row, j);
    }
    begin = end;
  }
  return out;
}

double CharLm::direction_loss(Direction& d, const std::vector<std::size_t>& ids,
                              bool accumulate) {
  const nn::Matrix<float> x = inputs(d, ids);
  const nn::LstmCache<float> cache = d.lstm.forward(x, false);
  const nn::Matrix<float> logits = d.output.forward(cache.hidden);
  const std::size_t v = vocab_.size();
  std::vector<std::size_t> all(v);
  std::iota(all.begin(), all.end(), std::size_t{0});
  nn::Matrix<float> d_logits(logits.rows(), v);
  double total = 0.0;
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    total += nn::masked_softmax_xent<float>(logits.row(t), all, ids[t + 1],
                                            d_logits.row(t));
  }
  if (accumulate) {
    const nn::Matrix<float> dh = d.output.backward(cache.hidden, d_logits);
    const nn::Matrix<float> dx = d.lstm.backward(x, cache, dh, false);
    for (std::size_t t = 0; t < x.rows(); ++t) {
      d.embed.accumulate(ids[t], dx.row(t));
    }
  }
  return total;
}

double CharLm::direction_nll(const Direction& d,
                             const std::vector<std::size_t>& ids) const {
  const nn::Matrix<float> hidden =
      d.lstm.forward(inputs(d, ids), false).hidden;
  const nn::Matrix<float> logits = d.output.forward(hidden);
  double total = 0.0;
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    total += nn::log_sum_exp<float>(logits.row(t)) - logits(t, ids[t + 1]);
  }
  return total;
}

double CharLm::loss(std::string_view text, bool accumulate,
                    std::size_t* predictions) {
  const auto f = encode(text, false);
  const auto b = encode(text, true);
  if (predictions) *predictions = (f.size() - 1) + (b.size() - 1);
  return direction_loss(fwd_, f, accumulate) +
         direction_loss(bwd_, b, accumulate);
}

double CharLm::perplexity(const std::vector<std::string>& lines) const {
  double total = 0.0;
  std::size_t count = 0;
  for (const std::string& line : lines) {
    const auto f = encode(line, false);
    const auto b = encode(line, true);
    total += direction_nll(fwd_, f) + direction_nll(bwd_, b);
    count += (f.size() - 1) + (b.size() - 1);
  }
  return count == 0 ? 1.0 : std::exp(total / static_cast<double>(count));
}

std::vector<nn::Param<float>*> CharLm::params() {
  std::vector<nn::Param<float>*> out;
  for (Direction* d : {&fwd_, &bwd_}) {
    for (auto* p : d->embed.params()) out.push_back(p);
    for (auto* p : d->lstm.params()) out.push_back(p);
    for (auto* p : d->output.params()) out.push_back(p);
  }
  return out;
}

std::vector<const nn::Param<float>*> CharLm::params() const {
  std::vector<const nn::Param<float>*> out;
  for (const Direction* d : {&fwd_, &bwd_}) {
    for (auto* p : d->embed.params()) out.push_back(p);
    for (auto* p : d->lstm.params()) out.push_back(p);
    for (auto* p : d->output.params()) out.push_back(p);
  }
  return out;
}

void CharLm::write(BinaryWriter& w) const {
  w.raw(kCharLmMagic);
  w.u32(kCharLmVersion);
  w.u32(static_cast<std::uint32_t>(vocab_.size()));
  for (const std::string& s : vocab_.symbols()) w.str(s);
  w.u32(static_cast<std::uint32_t>(embedding_dim()));
  w.u32(static_cast<std::uint32_t>(hidden_dim()));
  for (const auto* p : params()) w.section(p->name, p->value);
}

CharLm CharLm::read(BinaryReader& r) {
  if (r.raw(4) != kCharLmMagic) {
    throw Error(ErrorKind::kBadMagic, "not a character LM (magic JTCL)");
  }
  const std::uint32_t version = r.u32();
  if (version != kCharLmVersion) {
    throw Error(ErrorKind::kVersionMismatch,
                "character LM version " + std::to_string(version));
  }
  const std::uint32_t v = r.u32();
  std::vector<std::string> symbols;
  for (std::uint32_t i = 0; i < v; ++i) symbols.push_back(r.str());
  const std::uint32_t e = r.u32();
  const std::uint32_t h = r.u32();
  CharLm lm(CharVocabulary::from_symbols(std::move(symbols)), e, h);
  for (auto* p : lm.params()) {
    p->value = r.section(p->name, p->value.rows(), p->value.cols());
  }
  return lm;
}

void CharLm::save(const std::filesystem::path& path) const {
  BinaryWriter w;
  write(w);
  write_file(path, w.bytes());
}

CharLm CharLm::load(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  BinaryReader r(bytes);
  return read(r);
}

CharLm train_charlm(const std::vector<std::string>& lines,
                    const CharLmConfig& config, CharLmHistory* history) {
  std::vector<std::string> corpus;
  for (const std::string& line : lines) {
    if (!line.empty()) corpus.push_back(line);
  }
  if (corpus.empty()) {
    throw Error(ErrorKind::kEmptySplit, "character LM corpus is empty");
  }
  CharLm lm(CharVocabulary::build(corpus), config.embedding_dim, config.hidden);
  lm.init(config.seed);
  if (history) history->initial_perplexity = lm.perplexity(corpus);

  nn::Rng rng(config.seed ^ 0xC2B2AE3D27D4EB4FULL);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::vector<nn::Param<float>*> params = lm.params();
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      for (auto* p : params) p->zero_grad();
      std::size_t n = 0;
      lm.loss(corpus[i], true, &n);
      const float step =
          static_cast<float>(config.learning_rate / static_cast<double>(n));
      for (auto* p : params) {
        auto& v = p->value.values();
        const auto& g = p->grad.values();
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= step * g[k];
      }
    }
    if (history) history->perplexity.push_back(lm.perplexity(corpus));
  }
  return lm;
}

}  // namespace jafront
