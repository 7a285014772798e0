#ifndef JAFRONT_NN_LAYERS_H_
#define JAFRONT_NN_LAYERS_H_

#include <cmath>
#include <string>
#include <vector>

#include "jafront/nn/matrix.h"
#include "jafront/nn/rng.h"

namespace jafront::nn {

// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in))
template <typename T>
void init_uniform(Matrix<T>& m, std::size_t fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (T& v : m.values()) v = static_cast<T>(rng.uniform(-bound, bound));
}

template <typename T>
T sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

// y = x W^T + b over every row of x.
template <typename T>
class Linear {
 public:
  Linear() = default;
  Linear(const std::string& name, std::size_t in, std::size_t out)
      : weight_(name + ".weight", out, in), bias_(name + ".bias", 1, out) {}

  void init(Rng& rng) {
    init_uniform(weight_.value, in_dim(), rng);
    init_uniform(bias_.value, in_dim(), rng);
  }

  std::size_t in_dim() const { return weight_.value.cols(); }
  std::size_t out_dim() const { return weight_.value.rows(); }

  Matrix<T> forward(const Matrix<T>& x) const {
    if (x.cols() != in_dim()) {
      throw Error(ErrorKind::kWidthMismatch,
                  weight_.name + ": input width " + std::to_string(x.cols()) +
                      ", expected " + std::to_string(in_dim()));
    }
    Matrix<T> y(x.rows(), out_dim());
    const std::size_t in = in_dim();
    for (std::size_t t = 0; t < x.rows(); ++t) {
      const T* xr = x.row(t).data();
      for (std::size_t o = 0; o < out_dim(); ++o) {
        const T* w = weight_.value.row(o).data();
        T acc = bias_.value(0, o);
        for (std::size_t i = 0; i < in; ++i) acc += w[i] * xr[i];
        y(t, o) = acc;
      }
    }
    return y;
  }

  // Accumulates parameter gradients; returns dL/dx.
  Matrix<T> backward(const Matrix<T>& x, const Matrix<T>& dy) {
    Matrix<T> dx(x.rows(), in_dim());
    const std::size_t in = in_dim();
    for (std::size_t t = 0; t < x.rows(); ++t) {
      const T* xr = x.row(t).data();
      T* dxr = dx.row(t).data();
      for (std::size_t o = 0; o < out_dim(); ++o) {
        const T g = dy(t, o);
        if (g == T(0)) continue;
        bias_.grad(0, o) += g;
        const T* w = weight_.value.row(o).data();
        T* gw = weight_.grad.row(o).data();
        for (std::size_t i = 0; i < in; ++i) {
          gw[i] += g * xr[i];
          dxr[i] += g * w[i];
        }
      }
    }
    return dx;
  }

  std::vector<Param<T>*> params() { return {&weight_, &bias_}; }
  std::vector<const Param<T>*> params() const { return {&weight_, &bias_}; }

 private:
  Param<T> weight_;
  Param<T> bias_;
};

// Lookup table for one categorical field.
template <typename T>
class Embedding {
 public:
  Embedding() = default;
  Embedding(const std::string& name, std::size_t vocab, std::size_t dim)
      : table_(name, vocab, dim) {}

  // Unit variance.
  void init(Rng& rng) {
    const double bound = std::sqrt(3.0);
    for (T& v : table_.value.values()) v = static_cast<T>(rng.uniform(-bound, bound));
  }

  std::size_t vocab_size() const { return table_.value.rows(); }
  std::size_t dim() const { return table_.value.cols(); }

  // Copies row `index` into `out`.
  void lookup(std::size_t index, std::span<T> out) const {
    if (index >= vocab_size()) {
      throw Error(ErrorKind::kLabelIndex,
                  table_.name + ": index " + std::to_string(index) +
                      " >= vocabulary " + std::to_string(vocab_size()));
    }
    const auto r = table_.value.row(index);
    std::copy(r.begin(), r.end(), out.begin());
  }

  void accumulate(std::size_t index, std::span<const T> grad) {
    auto g = table_.grad.row(index);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += grad[i];
  }

  std::vector<Param<T>*> params() { return {&table_}; }
  std::vector<const Param<T>*> params() const { return {&table_}; }

 private:
  Param<T> table_;
};

}  // namespace jafront::nn

#endif  // JAFRONT_NN_LAYERS_H_
