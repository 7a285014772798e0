#ifndef JAFRONT_NN_RNG_H_
#define JAFRONT_NN_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace jafront::nn {

// mt19937_64 with hand-rolled draws and Fisher-Yates shuffle.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

  template <typename Item>
  void shuffle(std::vector<Item>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jafront::nn

#endif  // JAFRONT_NN_RNG_H_
