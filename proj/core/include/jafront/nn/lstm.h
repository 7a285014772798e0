#ifndef JAFRONT_NN_LSTM_H_
#define JAFRONT_NN_LSTM_H_

#include <cmath>
#include <string>
#include <vector>

#include "jafront/nn/layers.h"
#include "jafront/nn/matrix.h"
#include "jafront/nn/rng.h"

namespace jafront::nn {

// Activations kept from a forward pass, indexed by input position.
template <typename T>
struct LstmCache {
  Matrix<T> gates;   // T x 4H: i, f, g, o after their nonlinearities
  Matrix<T> cell;    // T x H
  Matrix<T> tanh_cell;
  Matrix<T> hidden;  // T x H
};

// Single-direction LSTM starting from zero state. Gate order i, f, g, o.
template <typename T>
class Lstm {
 public:
  Lstm() = default;
  Lstm(const std::string& name, std::size_t input, std::size_t hidden)
      : input_(name + ".W", 4 * hidden, input),
        recurrent_(name + ".U", 4 * hidden, hidden),
        bias_(name + ".b", 1, 4 * hidden) {}

  // uniform(+-1/sqrt(fan_in)) weights, forget-gate bias +1.
  void init(Rng& rng) {
    init_uniform(input_.value, hidden_dim(), rng);
    init_uniform(recurrent_.value, hidden_dim(), rng);
    bias_.value.fill(T(0));
    for (std::size_t j = 0; j < hidden_dim(); ++j) {
      bias_.value(0, hidden_dim() + j) = T(1);
    }
  }

  std::size_t input_dim() const { return input_.value.cols(); }
  std::size_t hidden_dim() const { return recurrent_.value.cols(); }

  // Runs over the rows of x, right-to-left when `reverse`. Row t of the
  // returned cache belongs to input row t in either direction.
  LstmCache<T> forward(const Matrix<T>& x, bool reverse) const {
    check_width(x);
    const std::size_t steps = x.rows();
    const std::size_t h = hidden_dim();
    const std::size_t in = input_dim();
    LstmCache<T> cache{Matrix<T>(steps, 4 * h), Matrix<T>(steps, h),
                       Matrix<T>(steps, h), Matrix<T>(steps, h)};
    std::vector<T> h_prev(h, T(0));
    std::vector<T> c_prev(h, T(0));
    std::vector<T> z(4 * h);
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t t = reverse ? steps - 1 - s : s;
      const T* xr = x.row(t).data();
      for (std::size_t k = 0; k < 4 * h; ++k) {
        T acc = bias_.value(0, k);
        const T* w = input_.value.row(k).data();
        for (std::size_t i = 0; i < in; ++i) acc += w[i] * xr[i];
        const T* u = recurrent_.value.row(k).data();
        for (std::size_t j = 0; j < h; ++j) acc += u[j] * h_prev[j];
        z[k] = acc;
      }
      T* gates = cache.gates.row(t).data();
      for (std::size_t j = 0; j < h; ++j) {
        const T ig = sigmoid(z[j]);
        const T fg = sigmoid(z[h + j]);
        const T gg = std::tanh(z[2 * h + j]);
        const T og = sigmoid(z[3 * h + j]);
        gates[j] = ig;
        gates[h + j] = fg;
        gates[2 * h + j] = gg;
        gates[3 * h + j] = og;
        const T c = fg * c_prev[j] + ig * gg;
        const T tc = std::tanh(c);
        cache.cell(t, j) = c;
        cache.tanh_cell(t, j) = tc;
        cache.hidden(t, j) = og * tc;
        c_prev[j] = c;
        h_prev[j] = og * tc;
      }
    }
    return cache;
  }

  // Backpropagation through time given dL/dh for every row. Accumulates
  // parameter gradients and returns dL/dx.
  Matrix<T> backward(const Matrix<T>& x, const LstmCache<T>& cache,
                     const Matrix<T>& dh_out, bool reverse) {
    const std::size_t steps = x.rows();
    const std::size_t h = hidden_dim();
    const std::size_t in = input_dim();
    Matrix<T> dx(steps, in);
    std::vector<T> dh_next(h, T(0));
    std::vector<T> dc_next(h, T(0));
    std::vector<T> dz(4 * h);
    for (std::size_t s = steps; s-- > 0;) {
      const std::size_t t = reverse ? steps - 1 - s : s;
      // Position processed just before t, if any.
      const bool has_prev = s > 0;
      const std::size_t prev = reverse ? t + 1 : t - 1;
      const T* gates = cache.gates.row(t).data();
      for (std::size_t j = 0; j < h; ++j) {
        const T ig = gates[j];
        const T fg = gates[h + j];
        const T gg = gates[2 * h + j];
        const T og = gates[3 * h + j];
        const T tc = cache.tanh_cell(t, j);
        const T c_prev = has_prev ? cache.cell(prev, j) : T(0);
        const T dh = dh_out(t, j) + dh_next[j];
        const T d_o = dh * tc;
        const T dc = dh * og * (T(1) - tc * tc) + dc_next[j];
        dz[j] = dc * gg * ig * (T(1) - ig);
        dz[h + j] = dc * c_prev * fg * (T(1) - fg);
        dz[2 * h + j] = dc * ig * (T(1) - gg * gg);
        dz[3 * h + j] = d_o * og * (T(1) - og);
        dc_next[j] = dc * fg;
      }
      std::fill(dh_next.begin(), dh_next.end(), T(0));
      const T* xr = x.row(t).data();
      T* dxr = dx.row(t).data();
      for (std::size_t k = 0; k < 4 * h; ++k) {
        const T g = dz[k];
        bias_.grad(0, k) += g;
        const T* w = input_.value.row(k).data();
        T* gw = input_.grad.row(k).data();
        for (std::size_t i = 0; i < in; ++i) {
          gw[i] += g * xr[i];
          dxr[i] += g * w[i];
        }
        if (has_prev) {
          const T* u = recurrent_.value.row(k).data();
          T* gu = recurrent_.grad.row(k).data();
          const T* hp = cache.hidden.row(prev).data();
          for (std::size_t j = 0; j < h; ++j) {
            gu[j] += g * hp[j];
            dh_next[j] += g * u[j];
          }
        }
      }
    }
    return dx;
  }

  std::vector<Param<T>*> params() { return {&input_, &recurrent_, &bias_}; }
  std::vector<const Param<T>*> params() const {
    return {&input_, &recurrent_, &bias_};
  }

 private:
  void check_width(const Matrix<T>& x) const {
    if (x.cols() != input_dim()) {
      throw Error(ErrorKind::kWidthMismatch,
                  input_.name + ": input width " + std::to_string(x.cols()) +
                      ", expected " + std::to_string(input_dim()));
    }
  }

  Param<T> input_;
  Param<T> recurrent_;
  Param<T> bias_;
};

template <typename T>
struct BiLstmCache {
  LstmCache<T> forward;
  LstmCache<T> backward;
};

// Output row t is [forward h_t ; backward h_t], width 2H.
template <typename T>
class BiLstm {
 public:
  BiLstm() = default;
  BiLstm(const std::string& name, std::size_t input, std::size_t hidden)
      : fwd_(name + ".fwd", input, hidden), bwd_(name + ".bwd", input, hidden) {}

  void init(Rng& rng) {
    fwd_.init(rng);
    bwd_.init(rng);
  }

  std::size_t input_dim() const { return fwd_.input_dim(); }
  std::size_t hidden_dim() const { return fwd_.hidden_dim(); }
  std::size_t output_dim() const { return 2 * hidden_dim(); }

  Matrix<T> forward(const Matrix<T>& x, BiLstmCache<T>* cache = nullptr) const {
    BiLstmCache<T> local{fwd_.forward(x, false), bwd_.forward(x, true)};
    Matrix<T> out = hconcat(local.forward.hidden, local.backward.hidden);
    if (cache) *cache = std::move(local);
    return out;
  }

  Matrix<T> backward(const Matrix<T>& x, const BiLstmCache<T>& cache,
                     const Matrix<T>& dout) {
    const std::size_t h = hidden_dim();
    Matrix<T> df(x.rows(), h);
    Matrix<T> db(x.rows(), h);
    for (std::size_t t = 0; t < x.rows(); ++t) {
      for (std::size_t j = 0; j < h; ++j) {
        df(t, j) = dout(t, j);
        db(t, j) = dout(t, h + j);
      }
    }
    Matrix<T> dx = fwd_.backward(x, cache.forward, df, false);
    const Matrix<T> dxb = bwd_.backward(x, cache.backward, db, true);
    for (std::size_t i = 0; i < dx.size(); ++i) dx.values()[i] += dxb.values()[i];
    return dx;
  }

  std::vector<Param<T>*> params() {
    auto out = fwd_.params();
    for (auto* p : bwd_.params()) out.push_back(p);
    return out;
  }
  std::vector<const Param<T>*> params() const {
    auto out = fwd_.params();
    for (auto* p : bwd_.params()) out.push_back(p);
    return out;
  }

 private:
  Lstm<T> fwd_;
  Lstm<T> bwd_;
};

}  // namespace jafront::nn

#endif  // JAFRONT_NN_LSTM_H_
