#ifndef JAFRONT_NN_CRF_H_
#define JAFRONT_NN_CRF_H_

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jafront/nn/layers.h"
#include "jafront/nn/matrix.h"

namespace jafront::nn {

template <typename T>
T log_sum_exp(std::span<const T> xs) {
  T best = -std::numeric_limits<T>::infinity();
  for (T x : xs) best = std::max(best, x);
  if (!std::isfinite(best)) return best;
  T sum = T(0);
  for (T x : xs) sum += std::exp(x - best);
  return best + std::log(sum);
}

template <typename T>
struct ViterbiResult {
  std::vector<std::size_t> labels;
  T score = T(0);
};

// Linear-chain CRF over K labels. transitions(i, j) scores label i followed
// by label j; start/end score the first and last label.
template <typename T>
class Crf {
 public:
  Crf() = default;
  Crf(const std::string& name, std::size_t labels)
      : transitions_(name + ".transitions", labels, labels),
        start_(name + ".start", 1, labels),
        end_(name + ".end", 1, labels) {}

  void init(Rng& rng) {
    init_uniform(transitions_.value, num_labels(), rng);
    init_uniform(start_.value, num_labels(), rng);
    init_uniform(end_.value, num_labels(), rng);
  }

  std::size_t num_labels() const { return transitions_.value.rows(); }

  Matrix<T>& transitions() { return transitions_.value; }
  const Matrix<T>& transitions() const { return transitions_.value; }
  Matrix<T>& start() { return start_.value; }
  Matrix<T>& end() { return end_.value; }

  T score(const Matrix<T>& emissions, const std::vector<std::size_t>& labels) const {
    check(emissions, &labels);
    T s = start_.value(0, labels[0]) + emissions(0, labels[0]);
    for (std::size_t t = 1; t < labels.size(); ++t) {
      s += transitions_.value(labels[t - 1], labels[t]) +
           emissions(t, labels[t]);
    }
    return s + end_.value(0, labels.back());
  }

  T log_partition(const Matrix<T>& emissions) const {
    check(emissions, nullptr);
    const Matrix<T> alpha = forward_scores(emissions);
    return finish(alpha);
  }

  // log Z - score(gold); >= 0 up to rounding.
  T nll(const Matrix<T>& emissions, const std::vector<std::size_t>& labels) const {
    return log_partition(emissions) - score(emissions, labels);
  }

  // Computes nll, accumulates parameter gradients and writes dL/demissions.
  T nll_backward(const Matrix<T>& emissions,
                 const std::vector<std::size_t>& labels,
                 Matrix<T>& d_emissions) {
    check(emissions, &labels);
    const std::size_t steps = emissions.rows();
    const std::size_t k = num_labels();
    const Matrix<T> alpha = forward_scores(emissions);
    const Matrix<T> beta = backward_scores(emissions);
    const T log_z = finish(alpha);

    d_emissions = Matrix<T>(steps, k);
    for (std::size_t t = 0; t < steps; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        d_emissions(t, j) = std::exp(alpha(t, j) + beta(t, j) - log_z);
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      start_.grad(0, j) += d_emissions(0, j);
      end_.grad(0, j) += d_emissions(steps - 1, j);
    }
    for (std::size_t t = 1; t < steps; ++t) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          transitions_.grad(i, j) +=
              std::exp(alpha(t - 1, i) + transitions_.value(i, j) +
                       emissions(t, j) + beta(t, j) - log_z);
        }
      }
    }
    // Subtract the gold path's indicator features.
    start_.grad(0, labels[0]) -= T(1);
    end_.grad(0, labels.back()) -= T(1);
    for (std::size_t t = 0; t < steps; ++t) {
      d_emissions(t, labels[t]) -= T(1);
      if (t > 0) transitions_.grad(labels[t - 1], labels[t]) -= T(1);
    }
    return log_z - score(emissions, labels);
  }

  // Highest-scoring label sequence. `allowed`, when given, restricts labels
  // per position (allowed[t][j]).
  ViterbiResult<T> viterbi(
      const Matrix<T>& emissions,
      const std::vector<std::vector<bool>>* allowed = nullptr) const {
    check(emissions, nullptr);
    const std::size_t steps = emissions.rows();
    const std::size_t k = num_labels();
    const T neg_inf = -std::numeric_limits<T>::infinity();
    auto permitted = [&](std::size_t t, std::size_t j) {
      return allowed == nullptr || (*allowed)[t][j];
    };
    Matrix<T> best(steps, k, neg_inf);
    std::vector<std::size_t> back(steps * k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (permitted(0, j)) best(0, j) = start_.value(0, j) + emissions(0, j);
    }
    for (std::size_t t = 1; t < steps; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        if (!permitted(t, j)) continue;
        T top = neg_inf;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < k; ++i) {
          const T s = best(t - 1, i) + transitions_.value(i, j);
          if (s > top) {
            top = s;
            arg = i;
          }
        }
        best(t, j) = top + emissions(t, j);
        back[t * k + j] = arg;
      }
    }
    ViterbiResult<T> out;
    out.score = neg_inf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const T s = best(steps - 1, j) + end_.value(0, j);
      if (s > out.score) {
        out.score = s;
        last = j;
      }
    }
    out.labels.assign(steps, 0);
    out.labels[steps - 1] = last;
    for (std::size_t t = steps - 1; t > 0; --t) {
      out.labels[t - 1] = back[t * k + out.labels[t]];
    }
    return out;
  }

  std::vector<Param<T>*> params() { return {&transitions_, &start_, &end_}; }
  std::vector<const Param<T>*> params() const {
    return {&transitions_, &start_, &end_};
  }

 private:
  void check(const Matrix<T>& emissions,
             const std::vector<std::size_t>* labels) const {
    if (emissions.rows() == 0) {
      throw Error(ErrorKind::kInvalidArgument, "CRF needs at least one step");
    }
    if (emissions.cols() != num_labels()) {
      throw Error(ErrorKind::kWidthMismatch,
                  "emission width " + std::to_string(emissions.cols()) +
                      " for " + std::to_string(num_labels()) + " labels");
    }
    if (labels) {
      if (labels->size() != emissions.rows()) {
        throw Error(ErrorKind::kDimMismatch, "label count != steps");
      }
      for (std::size_t y : *labels) {
        if (y >= num_labels()) {
          throw Error(ErrorKind::kLabelIndex,
                      "label " + std::to_string(y) + " >= " +
                          std::to_string(num_labels()));
        }
      }
    }
  }

  // alpha(t, j): log-sum of all prefixes ending in j at t, emission included.
  Matrix<T> forward_scores(const Matrix<T>& emissions) const {
    const std::size_t steps = emissions.rows();
    const std::size_t k = num_labels();
    Matrix<T> alpha(steps, k);
    std::vector<T> terms(k);
    for (std::size_t j = 0; j < k; ++j) {
      alpha(0, j) = start_.value(0, j) + emissions(0, j);
    }
    for (std::size_t t = 1; t < steps; ++t) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
          terms[i] = alpha(t - 1, i) + transitions_.value(i, j);
        }
        alpha(t, j) = log_sum_exp<T>(terms) + emissions(t, j);
      }
    }
    return alpha;
  }

  // beta(t, i): log-sum of all suffixes after t given label i at t.
  Matrix<T> backward_scores(const Matrix<T>& emissions) const {
    const std::size_t steps = emissions.rows();
    const std::size_t k = num_labels();
    Matrix<T> beta(steps, k);
    std::vector<T> terms(k);
    for (std::size_t i = 0; i < k; ++i) beta(steps - 1, i) = end_.value(0, i);
    for (std::size_t t = steps - 1; t > 0; --t) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          terms[j] = transitions_.value(i, j) + emissions(t, j) + beta(t, j);
        }
        beta(t - 1, i) = log_sum_exp<T>(terms);
      }
    }
    return beta;
  }

  T finish(const Matrix<T>& alpha) const {
    const std::size_t k = num_labels();
    std::vector<T> terms(k);
    for (std::size_t j = 0; j < k; ++j) {
      terms[j] = alpha(alpha.rows() - 1, j) + end_.value(0, j);
    }
    return log_sum_exp<T>(terms);
  }

  Param<T> transitions_;
  Param<T> start_;
  Param<T> end_;
};

// Softmax cross-entropy restricted to `candidates` (indices into `logits`).
// Writes dL/dlogits (zero outside the candidate set).
template <typename T>
T masked_softmax_xent(std::span<const T> logits,
                      const std::vector<std::size_t>& candidates,
                      std::size_t gold, std::span<T> d_logits) {
  std::vector<T> sel(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    sel[c] = logits[candidates[c]];
  }
  const T log_z = log_sum_exp<T>(sel);
  std::fill(d_logits.begin(), d_logits.end(), T(0));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    d_logits[candidates[c]] = std::exp(sel[c] - log_z);
  }
  d_logits[candidates[gold]] -= T(1);
  return log_z - sel[gold];
}

}  // namespace jafront::nn

#endif  // JAFRONT_NN_CRF_H_
