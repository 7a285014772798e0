#ifndef JAFRONT_BINARY_IO_H_
#define JAFRONT_BINARY_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jafront/nn/matrix.h"

namespace jafront {

// Little-endian byte sink.
class BinaryWriter {
 public:
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f32(float v);
  void f64(double v);
  void raw(std::string_view bytes) { buffer_.append(bytes); }
  // u32 length + bytes
  void str(std::string_view s);
  // name, rows, cols, float32 values
  void section(std::string_view name, const nn::Matrix<float>& m);

  const std::string& bytes() const { return buffer_; }
  std::size_t size() const { return buffer_.size(); }

 private:
  std::string buffer_;
};

// Bounds-checked reader; running past the end throws kCorrupt.
class BinaryReader {
 public:
  explicit BinaryReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  float f32();
  double f64();
  std::string_view raw(std::size_t n);
  std::string str();
  // Reads a section and checks its name and shape.
  nn::Matrix<float> section(std::string_view expected_name,
                            std::size_t rows, std::size_t cols);
  // Reads a section of any shape.
  nn::Matrix<float> section(std::string* name);

  std::size_t offset() const { return offset_; }
  void seek(std::size_t offset);
  std::size_t remaining() const { return bytes_.size() - offset_; }

 private:
  void need(std::size_t n) const;

  std::string_view bytes_;
  std::size_t offset_ = 0;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace jafront

#endif  // JAFRONT_BINARY_IO_H_
