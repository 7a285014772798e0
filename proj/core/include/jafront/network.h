#ifndef JAFRONT_NETWORK_H_
#define JAFRONT_NETWORK_H_

#include <optional>
#include <string>
#include <vector>

#include "jafront/error.h"
#include "jafront/nn/crf.h"
#include "jafront/nn/layers.h"
#include "jafront/nn/lstm.h"
#include "jafront/nn/matrix.h"
#include "jafront/nn/rng.h"

namespace jafront {

enum class HeadKind { kCrf, kCandidates };

struct NetworkSpec {
  std::vector<std::size_t> field_vocab_sizes;  // one per consumed field
  std::size_t field_dim = 16;
  std::size_t implicit_dim = 0;
  std::size_t hidden = 512;
  std::size_t outputs = 2;  // CRF labels or candidate rows
  HeadKind head = HeadKind::kCrf;

  std::size_t input_dim() const {
    return field_vocab_sizes.size() * field_dim + implicit_dim;
  }
};

template <typename T>
struct NetworkInput {
  std::vector<std::vector<std::size_t>> fields;  // [step][field]
  nn::Matrix<T> implicit;                        // steps x implicit_dim

  std::size_t steps() const { return fields.size(); }
};

// A polyphone target: its position, the output rows of its lemma's
// candidates, and the gold candidate (index into rows).
struct CandidateTarget {
  std::size_t position = 0;
  std::vector<std::size_t> rows;
  std::size_t gold = 0;
};

// Field embeddings (+ frozen implicit vectors) -> BiLSTM -> linear ->
// either a CRF over labels or a softmax restricted to a target's candidate
// rows.
template <typename T>
class TaskNetwork {
 public:
  TaskNetwork() = default;
  explicit TaskNetwork(const NetworkSpec& spec) : spec_(spec) {
    if (spec.input_dim() == 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "network needs explicit or implicit input features");
    }
    for (std::size_t f = 0; f < spec.field_vocab_sizes.size(); ++f) {
      fields_.emplace_back("field" + std::to_string(f),
                           spec.field_vocab_sizes[f], spec.field_dim);
    }
    lstm_ = nn::BiLstm<T>("bilstm", spec.input_dim(), spec.hidden);
    projection_ = nn::Linear<T>("projection", 2 * spec.hidden, spec.outputs);
    if (spec.head == HeadKind::kCrf) crf_.emplace("crf", spec.outputs);
  }

  void init(nn::Rng& rng) {
    for (auto& f : fields_) f.init(rng);
    lstm_.init(rng);
    projection_.init(rng);
    if (crf_) crf_->init(rng);
  }

  const NetworkSpec& spec() const { return spec_; }

  nn::Matrix<T> emissions(const NetworkInput<T>& input) const {
    const nn::Matrix<T> x = assemble(input);
    return projection_.forward(lstm_.forward(x));
  }

  // CRF negative log-likelihood of `gold`.
  T sequence_loss(const NetworkInput<T>& input,
                  const std::vector<std::size_t>& gold, bool accumulate) {
    require_crf();
    if (!accumulate) return crf_->nll(emissions(input), gold);
    Pass pass = forward(input);
    nn::Matrix<T> d_emissions;
    const T loss = crf_->nll_backward(pass.emissions, gold, d_emissions);
    backward(input, pass, d_emissions);
    return loss;
  }

  // Summed cross-entropy over the targets' candidate sets.
  T candidate_loss(const NetworkInput<T>& input,
                   const std::vector<CandidateTarget>& targets,
                   bool accumulate) {
    if (spec_.head != HeadKind::kCandidates) {
      throw Error(ErrorKind::kInvalidArgument, "network has a CRF head");
    }
    if (targets.empty()) return T(0);
    Pass pass = forward(input);
    nn::Matrix<T> d_emissions(pass.emissions.rows(), pass.emissions.cols());
    std::vector<T> scratch(spec_.outputs);
    T loss = T(0);
    for (const CandidateTarget& target : targets) {
      loss += nn::masked_softmax_xent<T>(pass.emissions.row(target.position),
                                         target.rows, target.gold, scratch);
      auto row = d_emissions.row(target.position);
      for (std::size_t k = 0; k < scratch.size(); ++k) row[k] += scratch[k];
    }
    if (accumulate) backward(input, pass, d_emissions);
    return loss;
  }

  nn::ViterbiResult<T> decode(
      const NetworkInput<T>& input,
      const std::vector<std::vector<bool>>* allowed = nullptr) const {
    require_crf();
    return crf_->viterbi(emissions(input), allowed);
  }

  // Index into target.rows of the highest-scoring candidate.
  std::size_t choose(const nn::Matrix<T>& emissions,
                     const CandidateTarget& target) const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < target.rows.size(); ++c) {
      if (emissions(target.position, target.rows[c]) >
          emissions(target.position, target.rows[best])) {
        best = c;
      }
    }
    return best;
  }

  const nn::Crf<T>* crf() const { return crf_ ? &*crf_ : nullptr; }

  std::vector<nn::Param<T>*> params() {
    std::vector<nn::Param<T>*> out;
    for (auto& f : fields_) append(out, f.params());
    append(out, lstm_.params());
    append(out, projection_.params());
    if (crf_) append(out, crf_->params());
    return out;
  }
  std::vector<const nn::Param<T>*> params() const {
    std::vector<const nn::Param<T>*> out;
    for (const auto& f : fields_) append(out, f.params());
    append(out, lstm_.params());
    append(out, projection_.params());
    if (crf_) append(out, crf_->params());
    return out;
  }

 private:
  struct Pass {
    nn::Matrix<T> x;
    nn::BiLstmCache<T> cache;
    nn::Matrix<T> hidden;
    nn::Matrix<T> emissions;
  };

  template <typename P>
  static void append(std::vector<P>& out, const std::vector<P>& more) {
    out.insert(out.end(), more.begin(), more.end());
  }

  void require_crf() const {
    if (!crf_) throw Error(ErrorKind::kInvalidArgument, "network has no CRF head");
  }

  nn::Matrix<T> assemble(const NetworkInput<T>& input) const {
    const std::size_t steps = input.steps();
    const std::size_t nf = fields_.size();
    if (spec_.implicit_dim > 0 &&
        (input.implicit.rows() != steps ||
         input.implicit.cols() != spec_.implicit_dim)) {
      throw Error(ErrorKind::kWidthMismatch,
                  "implicit features are " +
                      std::to_string(input.implicit.rows()) + "x" +
                      std::to_string(input.implicit.cols()) + ", expected " +
                      std::to_string(steps) + "x" +
                      std::to_string(spec_.implicit_dim));
    }
    nn::Matrix<T> x(steps, spec_.input_dim());
    for (std::size_t t = 0; t < steps; ++t) {
      if (input.fields[t].size() != nf) {
        throw Error(ErrorKind::kWidthMismatch, "field count mismatch");
      }
      auto row = x.row(t);
      for (std::size_t f = 0; f < nf; ++f) {
        fields_[f].lookup(input.fields[t][f],
                          row.subspan(f * spec_.field_dim, spec_.field_dim));
      }
      for (std::size_t d = 0; d < spec_.implicit_dim; ++d) {
        row[nf * spec_.field_dim + d] = input.implicit(t, d);
      }
    }
    return x;
  }

  Pass forward(const NetworkInput<T>& input) const {
    Pass p;
    p.x = assemble(input);
    p.hidden = lstm_.forward(p.x, &p.cache);
    p.emissions = projection_.forward(p.hidden);
    return p;
  }

  // Implicit features are frozen: their gradient is dropped.
  void backward(const NetworkInput<T>& input, const Pass& pass,
                const nn::Matrix<T>& d_emissions) {
    const nn::Matrix<T> d_hidden = projection_.backward(pass.hidden, d_emissions);
    const nn::Matrix<T> dx = lstm_.backward(pass.x, pass.cache, d_hidden);
    for (std::size_t t = 0; t < input.steps(); ++t) {
      const auto row = dx.row(t);
      for (std::size_t f = 0; f < fields_.size(); ++f) {
        fields_[f].accumulate(input.fields[t][f],
                              row.subspan(f * spec_.field_dim, spec_.field_dim));
      }
    }
  }

  NetworkSpec spec_;
  std::vector<nn::Embedding<T>> fields_;
  nn::BiLstm<T> lstm_;
  nn::Linear<T> projection_;
  std::optional<nn::Crf<T>> crf_;
};

}  // namespace jafront

#endif  // JAFRONT_NETWORK_H_
