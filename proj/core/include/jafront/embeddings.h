#ifndef JAFRONT_EMBEDDINGS_H_
#define JAFRONT_EMBEDDINGS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jafront/nn/matrix.h"
#include "jafront/text.h"

namespace jafront {

// One row per morpheme.
using EmbeddingMatrix = nn::Matrix<float>;

inline constexpr std::string_view kEmbeddingMagic = "JTFE";
inline constexpr std::uint32_t kEmbeddingVersion = 1;

// Serializes per-sentence matrices in the shared embedding file layout
// (little-endian):
//   "JTFE" u32 version u32 dim u32 sentence_count
//   per sentence: u32 id_len, id bytes, u32 token_count, token_count*dim f32
//   u64 record offset per sentence, then u64 offset of that index.
class EmbeddingFileWriter {
 public:
  explicit EmbeddingFileWriter(std::uint32_t dim) : dim_(dim) {}

  // Throws kDimMismatch on a width other than dim, kInvalidArgument on a
  // repeated id.
  void add(const std::string& id, const EmbeddingMatrix& matrix);

  std::string bytes() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::uint32_t dim_;
  std::vector<std::pair<std::string, EmbeddingMatrix>> records_;
};

class EmbeddingFile {
 public:
  // Parses and validates the whole file: kBadMagic, kVersionMismatch,
  // kDimMismatch (a record whose size disagrees with the header dim),
  // kCorrupt (truncation, bad index, duplicate id).
  static EmbeddingFile parse(std::string_view bytes);
  static EmbeddingFile load(const std::filesystem::path& path);

  std::uint32_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool contains(std::string_view id) const;
  // Ids in file order.
  const std::vector<std::string>& ids() const { return ids_; }

  // Throws kUnknownSentenceId.
  const EmbeddingMatrix& fetch(std::string_view sentence_id) const;

 private:
  std::uint32_t dim_ = 0;
  std::vector<std::string> ids_;
  std::map<std::string, EmbeddingMatrix, std::less<>> matrices_;
};

// Half-open subword ranges, one per morpheme.
using SubwordAlignment = std::vector<std::pair<std::size_t, std::size_t>>;

// Mean of each morpheme's subword rows. Throws kEmptyRange on an empty
// range and kAlignmentMismatch when ranges do not partition the rows.
EmbeddingMatrix pool_subwords(const EmbeddingMatrix& subwords,
                              const SubwordAlignment& alignment);

// Source of frozen contextual vectors aligned to morphemes.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dim() const = 0;
  // Matrix with one row per morpheme of `sentence`.
  virtual EmbeddingMatrix embed(const Sentence& sentence) const = 0;
};

// Looks sentences up by id in a pre-exported file.
class FileEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit FileEmbeddingProvider(std::shared_ptr<const EmbeddingFile> file)
      : file_(std::move(file)) {}

  std::size_t dim() const override { return file_->dim(); }
  // Throws kUnknownSentenceId, or kAlignmentMismatch when the stored row
  // count differs from the morpheme count.
  EmbeddingMatrix embed(const Sentence& sentence) const override;

 private:
  std::shared_ptr<const EmbeddingFile> file_;
};

}  // namespace jafront

#endif  // JAFRONT_EMBEDDINGS_H_
