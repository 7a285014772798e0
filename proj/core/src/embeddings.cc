#include "jafront/embeddings.h"

#include <sstream>

#include "jafront/binary_io.h"
#include "jafront/error.h"

namespace jafront {

void EmbeddingFileWriter::add(const std::string& id,
                              const EmbeddingMatrix& matrix) {
  if (matrix.cols() != dim_) {
    throw Error(ErrorKind::kDimMismatch,
                "sentence '" + id + "' has width " +
                    std::to_string(matrix.cols()) + ", file dim is " +
                    std::to_string(dim_));
  }
  for (const auto& [existing, m] : records_) {
    if (existing == id) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate sentence id " + id);
    }
  }
  records_.emplace_back(id, matrix);
}

std::string EmbeddingFileWriter::bytes() const {
  BinaryWriter w;
  w.raw(kEmbeddingMagic);
  w.u32(kEmbeddingVersion);
  w.u32(dim_);
  w.u32(static_cast<std::uint32_t>(records_.size()));
  std::vector<std::uint64_t> offsets;
  offsets.reserve(records_.size());
  for (const auto& [id, m] : records_) {
    offsets.push_back(w.size());
    w.str(id);
    w.u32(static_cast<std::uint32_t>(m.rows()));
    for (float v : m.values()) w.f32(v);
  }
  const std::uint64_t index_offset = w.size();
  for (std::uint64_t o : offsets) w.u64(o);
  w.u64(index_offset);
  return w.bytes();
}

void EmbeddingFileWriter::save(const std::filesystem::path& path) const {
  write_file(path, bytes());
}

EmbeddingFile EmbeddingFile::parse(std::string_view bytes) {
  BinaryReader r(bytes);
  if (bytes.size() < 4 || r.raw(4) != kEmbeddingMagic) {
    throw Error(ErrorKind::kBadMagic, "not an embedding file (magic JTFE)");
  }
  const std::uint32_t version = r.u32();
  if (version != kEmbeddingVersion) {
    throw Error(ErrorKind::kVersionMismatch,
                "embedding file version " + std::to_string(version));
  }
  EmbeddingFile file;
  file.dim_ = r.u32();
  const std::uint32_t count = r.u32();
  const std::size_t header_end = r.offset();

  if (bytes.size() < header_end + 8) {
    throw Error(ErrorKind::kCorrupt, "embedding file has no index");
  }
  r.seek(bytes.size() - 8);
  const std::uint64_t index_offset = r.u64();
  if (index_offset < header_end ||
      index_offset + 8ULL * count + 8 != bytes.size()) {
    throw Error(ErrorKind::kCorrupt, "embedding index offset out of range");
  }
  r.seek(index_offset);
  std::vector<std::uint64_t> offsets(count);
  for (auto& o : offsets) o = r.u64();

  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint64_t begin = offsets[i];
    const std::uint64_t end = i + 1 < count ? offsets[i + 1] : index_offset;
    if (begin < header_end || end < begin || end > index_offset ||
        (i == 0 && begin != header_end)) {
      throw Error(ErrorKind::kCorrupt,
                  "record " + std::to_string(i) + " has a bad offset");
    }
    r.seek(begin);
    std::string id = r.str();
    const std::uint32_t tokens = r.u32();
    const std::uint64_t expected =
        (r.offset() - begin) + 4ULL * tokens * file.dim_;
    if (end - begin != expected) {
      std::ostringstream msg;
      msg << "sentence '" << id << "' holds " << (end - begin) - (r.offset() - begin)
          << " payload bytes, expected " << tokens << " x " << file.dim_
          << " floats";
      throw Error(ErrorKind::kDimMismatch, msg.str());
    }
    EmbeddingMatrix m(tokens, file.dim_);
    for (float& v : m.values()) v = r.f32();
    if (file.matrices_.count(id) != 0) {
      throw Error(ErrorKind::kCorrupt, "duplicate sentence id " + id);
    }
    file.ids_.push_back(id);
    file.matrices_.emplace(std::move(id), std::move(m));
  }
  return file;
}

EmbeddingFile EmbeddingFile::load(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  return parse(bytes);
}

bool EmbeddingFile::contains(std::string_view id) const {
  return matrices_.find(id) != matrices_.end();
}

const EmbeddingMatrix& EmbeddingFile::fetch(std::string_view sentence_id) const {
  const auto it = matrices_.find(sentence_id);
  if (it == matrices_.end()) {
    throw Error(ErrorKind::kUnknownSentenceId,
                "no embeddings for sentence '" + std::string(sentence_id) + "'");
  }
  return it->second;
}

EmbeddingMatrix pool_subwords(const EmbeddingMatrix& subwords,
                              const SubwordAlignment& alignment) {
  EmbeddingMatrix out(alignment.size(), subwords.cols());
  std::size_t expected = 0;
  for (std::size_t w = 0; w < alignment.size(); ++w) {
    const auto [begin, end] = alignment[w];
    if (end <= begin) {
      throw Error(ErrorKind::kEmptyRange,
                  "morpheme " + std::to_string(w) + " has no subwords");
    }
    if (begin != expected || end > subwords.rows()) {
      throw Error(ErrorKind::kAlignmentMismatch,
                  "subword ranges do not partition the sequence at morpheme " +
                      std::to_string(w));
    }
    expected = end;
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t c = 0; c < subwords.cols(); ++c) {
        out(w, c) += subwords(s, c);
      }
    }
    const float n = static_cast<float>(end - begin);
    for (float& v : out.row(w)) v /= n;
  }
  if (expected != subwords.rows()) {
    throw Error(ErrorKind::kAlignmentMismatch,
                "subword ranges leave rows unassigned");
  }
  return out;
}

EmbeddingMatrix FileEmbeddingProvider::embed(const Sentence& sentence) const {
  const EmbeddingMatrix& m = file_->fetch(sentence.id);
  if (m.rows() != sentence.size()) {
    throw Error(ErrorKind::kAlignmentMismatch,
                "sentence '" + sentence.id + "' has " +
                    std::to_string(m.rows()) + " stored rows for " +
                    std::to_string(sentence.size()) + " morphemes");
  }
  return m;
}

}  // namespace jafront
