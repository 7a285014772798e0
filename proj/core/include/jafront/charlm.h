#ifndef JAFRONT_CHARLM_H_
#define JAFRONT_CHARLM_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jafront/binary_io.h"
#include "jafront/embeddings.h"
#include "jafront/nn/layers.h"
#include "jafront/nn/lstm.h"
#include "jafront/text.h"

namespace jafront {

// Characters of the training text plus <unk>, <s> and </s>.
class CharVocabulary {
 public:
  static constexpr std::size_t kUnk = 0;
  static constexpr std::size_t kBegin = 1;
  static constexpr std::size_t kEnd = 2;

  CharVocabulary();
  static CharVocabulary build(const std::vector<std::string>& lines);

  std::size_t size() const { return symbols_.size(); }
  std::size_t index(std::string_view ch) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  static CharVocabulary from_symbols(std::vector<std::string> symbols);

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct CharLmConfig {
  std::size_t hidden = 64;
  std::size_t embedding_dim = 32;
  std::size_t epochs = 10;
  double learning_rate = 0.5;
  std::uint64_t seed = 1;
};

struct CharLmHistory {
  double initial_perplexity = 0.0;
  std::vector<double> perplexity;  // after each epoch, both directions
};

// Forward and backward character language models sharing one vocabulary.
class CharLm {
 public:
  CharLm() = default;
  CharLm(CharVocabulary vocabulary, std::size_t embedding_dim,
         std::size_t hidden);

  void init(std::uint64_t seed);

  const CharVocabulary& vocabulary() const { return vocab_; }
  std::size_t hidden_dim() const { return fwd_.lstm.hidden_dim(); }
  std::size_t embedding_dim() const { return fwd_.embed.dim(); }
  std::size_t dim() const { return 2 * hidden_dim(); }

  // Row per morpheme: forward state after its last character followed by
  // the backward state after its first character. Unknown characters map to
  // <unk>.
  EmbeddingMatrix embed(const Sentence& sentence) const;

  // Summed next-character negative log-likelihood of `text` in both
  // directions; gradients are accumulated when `accumulate` is true.
  // `predictions` receives the number of scored positions.
  double loss(std::string_view text, bool accumulate,
              std::size_t* predictions = nullptr);

  // Perplexity over `lines`, both directions pooled.
  double perplexity(const std::vector<std::string>& lines) const;

  std::vector<nn::Param<float>*> params();
  std::vector<const nn::Param<float>*> params() const;

  void write(BinaryWriter& w) const;
  static CharLm read(BinaryReader& r);
  void save(const std::filesystem::path& path) const;
  static CharLm load(const std::filesystem::path& path);

 private:
  struct Direction {
    nn::Embedding<float> embed;
    nn::Lstm<float> lstm;
    nn::Linear<float> output;
  };

  std::vector<std::size_t> encode(std::string_view text, bool reversed) const;
  nn::Matrix<float> inputs(const Direction& d,
                           const std::vector<std::size_t>& ids) const;
  double direction_loss(Direction& d, const std::vector<std::size_t>& ids,
                        bool accumulate);
  double direction_nll(const Direction& d,
                       const std::vector<std::size_t>& ids) const;

  CharVocabulary vocab_;
  Direction fwd_;
  Direction bwd_;
};

// Trains both directions with per-line SGD; lines are shuffled each epoch
// by a generator seeded from config.seed.
CharLm train_charlm(const std::vector<std::string>& lines,
                    const CharLmConfig& config,
                    CharLmHistory* history = nullptr);

class CharLmProvider : public EmbeddingProvider {
 public:
  explicit CharLmProvider(std::shared_ptr<const CharLm> model)
      : model_(std::move(model)) {}

  std::size_t dim() const override { return model_->dim(); }
  EmbeddingMatrix embed(const Sentence& sentence) const override {
    return model_->embed(sentence);
  }
  const CharLm& model() const { return *model_; }

 private:
  std::shared_ptr<const CharLm> model_;
};

}  // namespace jafront

#endif  // JAFRONT_CHARLM_H_
