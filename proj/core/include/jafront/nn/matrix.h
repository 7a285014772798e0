#ifndef JAFRONT_NN_MATRIX_H_
#define JAFRONT_NN_MATRIX_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jafront/error.h"

namespace jafront::nn {

// Dense row-major matrix. Rows may be zero (an empty sequence keeps its
// width).
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
      throw Error(ErrorKind::kDimMismatch,
                  "matrix values do not match " + std::to_string(rows_) + "x" +
                      std::to_string(cols_));
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }

  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  void fill(T value) { std::fill(values_.begin(), values_.end(), value); }

  template <typename U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      out.values()[i] = static_cast<U>(values_[i]);
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

// Rows [0, a.rows()) of the result hold a, columns side by side.
template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::kDimMismatch, "hconcat row count mismatch");
  }
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), out.row(r).begin());
    std::copy(b.row(r).begin(), b.row(r).end(),
              out.row(r).begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  return out;
}

// A trainable block with its gradient accumulator.
template <typename T>
struct Param {
  std::string name;
  Matrix<T> value;
  Matrix<T> grad;

  Param() = default;
  Param(std::string n, std::size_t rows, std::size_t cols)
      : name(std::move(n)), value(rows, cols), grad(rows, cols) {}

  void zero_grad() { grad.fill(T(0)); }
};

}  // namespace jafront::nn

#endif  // JAFRONT_NN_MATRIX_H_
