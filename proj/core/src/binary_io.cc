#include "jafront/binary_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "jafront/error.h"

namespace jafront {

void BinaryWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buffer_.push_back(static_cast<char>(v >> (8 * i)));
}

void BinaryWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<char>(v >> (8 * i)));
}

void BinaryWriter::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  buffer_.append(s);
}

void BinaryWriter::section(std::string_view name, const nn::Matrix<float>& m) {
  str(name);
  u32(static_cast<std::uint32_t>(m.rows()));
  u32(static_cast<std::uint32_t>(m.cols()));
  for (float v : m.values()) f32(v);
}

void BinaryReader::need(std::size_t n) const {
  if (n > bytes_.size() - offset_) {
    std::ostringstream msg;
    msg << "unexpected end of data at byte " << offset_ << " (need " << n
        << ", have " << bytes_.size() - offset_ << ")";
    throw Error(ErrorKind::kCorrupt, msg.str());
  }
}

std::uint32_t BinaryReader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[offset_ + i]))
         << (8 * i);
  }
  offset_ += 4;
  return v;
}

std::uint64_t BinaryReader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[offset_ + i]))
         << (8 * i);
  }
  offset_ += 8;
  return v;
}

float BinaryReader::f32() { return std::bit_cast<float>(u32()); }
double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string_view BinaryReader::raw(std::size_t n) {
  need(n);
  const std::string_view out = bytes_.substr(offset_, n);
  offset_ += n;
  return out;
}

std::string BinaryReader::str() {
  const std::uint32_t n = u32();
  return std::string(raw(n));
}

nn::Matrix<float> BinaryReader::section(std::string* name) {
  std::string n = str();
  const std::size_t rows = u32();
  const std::size_t cols = u32();
  need(rows * cols * 4);
  nn::Matrix<float> m(rows, cols);
  for (float& v : m.values()) v = f32();
  if (name) *name = std::move(n);
  return m;
}

nn::Matrix<float> BinaryReader::section(std::string_view expected_name,
                                        std::size_t rows, std::size_t cols) {
  std::string name;
  nn::Matrix<float> m = section(&name);
  if (name != expected_name || m.rows() != rows || m.cols() != cols) {
    std::ostringstream msg;
    msg << "expected section " << expected_name << " " << rows << "x" << cols
        << ", found " << name << " " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::kCorrupt, msg.str());
  }
  return m;
}

void BinaryReader::seek(std::size_t offset) {
  if (offset > bytes_.size()) {
    throw Error(ErrorKind::kCorrupt, "seek past end of data");
  }
  offset_ = offset;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "short write to " + path.string());
}

}  // namespace jafront
