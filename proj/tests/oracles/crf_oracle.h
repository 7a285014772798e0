#ifndef JAFRONT_TESTS_CRF_ORACLE_H_
#define JAFRONT_TESTS_CRF_ORACLE_H_

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

// Scores of a linear-chain model, laid out as plain arrays.
struct ChainScores {
  std::size_t steps = 0;
  std::size_t labels = 0;
  std::vector<double> emissions;    // steps x labels
  std::vector<double> transitions;  // labels x labels, from -> to
  std::vector<double> start;        // labels
  std::vector<double> end;          // labels

  double emission(std::size_t t, std::size_t y) const {
    return emissions[t * labels + y];
  }
  double transition(std::size_t a, std::size_t b) const {
    return transitions[a * labels + b];
  }
};

inline double path_score(const ChainScores& s, const std::vector<std::size_t>& y) {
  double total = s.start[y[0]] + s.emission(0, y[0]);
  for (std::size_t t = 1; t < s.steps; ++t) {
    total += s.transition(y[t - 1], y[t]) + s.emission(t, y[t]);
  }
  return total + s.end[y[s.steps - 1]];
}

// Calls fn(sequence) for every one of labels^steps sequences.
template <typename Fn>
void for_each_sequence(std::size_t steps, std::size_t labels, Fn fn) {
  std::vector<std::size_t> y(steps, 0);
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(y));
    std::size_t t = 0;
    while (t < steps && ++y[t] == labels) y[t++] = 0;
    if (t == steps) return;
  }
}

struct Enumeration {
  double log_partition = 0.0;
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best;
  std::size_t sequences = 0;
};

// Exhaustive log-sum-exp and max over all label sequences.
inline Enumeration enumerate(const ChainScores& s) {
  Enumeration e;
  std::vector<double> scores;
  for_each_sequence(s.steps, s.labels, [&](const std::vector<std::size_t>& y) {
    const double v = path_score(s, y);
    scores.push_back(v);
    if (v > e.best_score) {
      e.best_score = v;
      e.best = y;
    }
  });
  double m = -std::numeric_limits<double>::infinity();
  for (double v : scores) m = std::max(m, v);
  long double sum = 0.0L;
  for (double v : scores) sum += std::exp(static_cast<long double>(v - m));
  e.log_partition = m + static_cast<double>(std::log(sum));
  e.sequences = scores.size();
  return e;
}

}  // namespace oracle

#endif  // JAFRONT_TESTS_CRF_ORACLE_H_
