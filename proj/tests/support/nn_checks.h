#ifndef JAFRONT_TESTS_NN_CHECKS_H_
#define JAFRONT_TESTS_NN_CHECKS_H_

#include <cmath>
#include <string>
#include <vector>

#include "crf_oracle.h"
#include "finite_difference.h"
#include "jafront/network.h"
#include "jafront/nn/crf.h"
#include "jafront/nn/layers.h"
#include "jafront/nn/lstm.h"
#include "jafront/nn/rng.h"

namespace checks {

using jafront::nn::Matrix;
using jafront::nn::Rng;

inline Matrix<double> random_matrix(std::size_t r, std::size_t c, Rng& rng,
                                    double scale = 1.0) {
  Matrix<double> m(r, c);
  for (double& v : m.values()) v = rng.uniform(-scale, scale);
  return m;
}

struct CrfCheck {
  std::size_t instances = 0;
  double worst_partition = 0.0;  // |log Z - oracle|
  double worst_viterbi = 0.0;    // |score - oracle max|
  double worst_path_score = 0.0; // |returned score - score(returned labels)|
  double worst_mass = 0.0;       // |sum of probabilities - 1|
  bool nll_nonnegative = true;
};

// Random CRFs with 1 <= T <= max_steps and 1 <= K <= max_labels against
// exhaustive enumeration.
inline CrfCheck crf_against_enumeration(std::size_t instances, std::uint64_t seed,
                                        std::size_t max_steps = 5,
                                        std::size_t max_labels = 4) {
  Rng rng(seed);
  CrfCheck out;
  for (std::size_t n = 0; n < instances; ++n) {
    const std::size_t steps = 1 + rng.below(max_steps);
    const std::size_t labels = 1 + rng.below(max_labels);
    jafront::nn::Crf<double> crf("crf", labels);
    oracle::ChainScores s;
    s.steps = steps;
    s.labels = labels;
    for (double& v : crf.transitions().values()) v = rng.uniform(-2, 2);
    for (double& v : crf.start().values()) v = rng.uniform(-2, 2);
    for (double& v : crf.end().values()) v = rng.uniform(-2, 2);
    const Matrix<double> em = random_matrix(steps, labels, rng, 3.0);
    s.emissions = em.values();
    s.transitions = crf.transitions().values();
    s.start = crf.start().values();
    s.end = crf.end().values();

    const oracle::Enumeration e = oracle::enumerate(s);
    const double log_z = crf.log_partition(em);
    const auto best = crf.viterbi(em);
    out.worst_partition = std::max(out.worst_partition, std::abs(log_z - e.log_partition));
    out.worst_viterbi = std::max(out.worst_viterbi, std::abs(best.score - e.best_score));
    out.worst_path_score = std::max(
        out.worst_path_score, std::abs(best.score - oracle::path_score(s, best.labels)));
    long double mass = 0.0L;
    oracle::for_each_sequence(steps, labels, [&](const std::vector<std::size_t>& y) {
      const double p = std::exp(crf.score(em, y) - log_z);
      if (!(p > 0.0 && p <= 1.0 + 1e-12)) out.nll_nonnegative = false;
      mass += p;
      if (crf.nll(em, y) < -1e-12) out.nll_nonnegative = false;
    });
    out.worst_mass = std::max(out.worst_mass, static_cast<double>(std::abs(mass - 1.0L)));
    ++out.instances;
  }
  return out;
}

using Reports = std::vector<oracle::GradientReport>;

template <typename Params>
void zero_grads(const Params& params) {
  for (auto* p : params) p->zero_grad();
}

// Compares every parameter block's accumulated gradient with central
// differences of `loss`.
template <typename Params, typename Loss>
void check_params(const std::string& prefix, const Params& params, Loss loss,
                  Reports& out) {
  for (auto* p : params) {
    const std::vector<double> analytic = p->grad.values();
    const auto numeric = oracle::numeric_gradient(p->value.values(), loss);
    out.push_back(oracle::compare(prefix + p->name, analytic, numeric));
  }
}

inline void check_linear(Rng& rng, Reports& out) {
  jafront::nn::Linear<double> layer("linear", 4, 3);
  layer.init(rng);
  Matrix<double> x = random_matrix(5, 4, rng);
  const Matrix<double> r = random_matrix(5, 3, rng);
  auto loss = [&] {
    const Matrix<double> y = layer.forward(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += r.values()[i] * y.values()[i];
    return s;
  };
  zero_grads(layer.params());
  const Matrix<double> dx = layer.backward(x, r);
  check_params("", layer.params(), loss, out);
  out.push_back(oracle::compare("linear.input", dx.values(),
                                oracle::numeric_gradient(x.values(), loss)));
}

inline void check_bilstm(Rng& rng, Reports& out) {
  jafront::nn::BiLstm<double> lstm("bilstm", 3, 2);
  lstm.init(rng);
  Matrix<double> x = random_matrix(4, 3, rng);
  const Matrix<double> r = random_matrix(4, 4, rng);
  auto loss = [&] {
    const Matrix<double> y = lstm.forward(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += r.values()[i] * y.values()[i];
    return s;
  };
  zero_grads(lstm.params());
  jafront::nn::BiLstmCache<double> cache;
  lstm.forward(x, &cache);
  const Matrix<double> dx = lstm.backward(x, cache, r);
  check_params("", lstm.params(), loss, out);
  out.push_back(oracle::compare("bilstm.input", dx.values(),
                                oracle::numeric_gradient(x.values(), loss)));
}

inline void check_crf(Rng& rng, Reports& out) {
  jafront::nn::Crf<double> crf("crf", 3);
  crf.init(rng);
  Matrix<double> em = random_matrix(4, 3, rng, 2.0);
  const std::vector<std::size_t> gold = {0, 2, 1, 1};
  auto loss = [&] { return crf.nll(em, gold); };
  zero_grads(crf.params());
  Matrix<double> d_em;
  crf.nll_backward(em, gold, d_em);
  check_params("", crf.params(), loss, out);
  out.push_back(oracle::compare("crf.emissions", d_em.values(),
                                oracle::numeric_gradient(em.values(), loss)));
}

inline void check_masked_softmax(Rng& rng, Reports& out) {
  std::vector<double> logits(6);
  for (double& v : logits) v = rng.uniform(-2, 2);
  const std::vector<std::size_t> cand = {1, 3, 4};
  std::vector<double> d(6);
  auto loss = [&] {
    std::vector<double> scratch(6);
    return jafront::nn::masked_softmax_xent<double>(logits, cand, 2, scratch);
  };
  jafront::nn::masked_softmax_xent<double>(logits, cand, 2, d);
  out.push_back(oracle::compare("softmax.logits", d, oracle::numeric_gradient(logits, loss)));
}

inline jafront::NetworkInput<double> random_input(const jafront::NetworkSpec& spec,
                                                  std::size_t steps, Rng& rng) {
  jafront::NetworkInput<double> in;
  for (std::size_t t = 0; t < steps; ++t) {
    std::vector<std::size_t> row;
    for (std::size_t v : spec.field_vocab_sizes) row.push_back(rng.below(v));
    in.fields.push_back(row);
  }
  in.implicit = random_matrix(steps, spec.implicit_dim, rng);
  return in;
}

// Whole tagger: field embeddings, BiLSTM, projection and the CRF.
inline void check_crf_network(Rng& rng, Reports& out) {
  jafront::NetworkSpec spec;
  spec.field_vocab_sizes = {4, 3};
  spec.field_dim = 2;
  spec.implicit_dim = 2;
  spec.hidden = 3;
  spec.outputs = 3;
  spec.head = jafront::HeadKind::kCrf;
  jafront::TaskNetwork<double> net(spec);
  net.init(rng);
  const auto input = random_input(spec, 4, rng);
  const std::vector<std::size_t> gold = {2, 0, 1, 1};
  zero_grads(net.params());
  net.sequence_loss(input, gold, true);
  check_params("crf-net.", net.params(),
               [&] { return net.sequence_loss(input, gold, false); }, out);
}

// Whole PD network: the cross-entropy head over candidate rows.
inline void check_candidate_network(Rng& rng, Reports& out) {
  jafront::NetworkSpec spec;
  spec.field_vocab_sizes = {5};
  spec.field_dim = 3;
  spec.implicit_dim = 2;
  spec.hidden = 3;
  spec.outputs = 5;
  spec.head = jafront::HeadKind::kCandidates;
  jafront::TaskNetwork<double> net(spec);
  net.init(rng);
  const auto input = random_input(spec, 5, rng);
  const std::vector<jafront::CandidateTarget> targets = {{1, {0, 1}, 1}, {3, {2, 3, 4}, 0}};
  zero_grads(net.params());
  net.candidate_loss(input, targets, true);
  check_params("pd-net.", net.params(),
               [&] { return net.candidate_loss(input, targets, false); }, out);
}

inline Reports gradient_checks(std::uint64_t seed) {
  Rng rng(seed);
  Reports out;
  check_linear(rng, out);
  check_bilstm(rng, out);
  check_crf(rng, out);
  check_masked_softmax(rng, out);
  check_crf_network(rng, out);
  check_candidate_network(rng, out);
  return out;
}

}  // namespace checks

#endif  // JAFRONT_TESTS_NN_CHECKS_H_
