#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace urnbandit {

// Deterministic random stream used by one trial (or one study). All sampling
// goes through inverse-CDF style transforms of the raw 64-bit engine output,
// so a given seed reproduces the same draws on any platform with the same
// build. Streams are cheap to create and never shared between threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Derives an independent stream for one trial: the base seed and the trial
  // index are combined with a Weyl increment and passed twice through the
  // splitmix64 finalizer.
  static RandomStream for_trial(std::uint64_t base_seed,
                                std::uint64_t trial_index) {
    std::uint64_t s = base_seed + 0x9E3779B97F4A7C15ull * (trial_index + 1);
    return RandomStream(mix64(mix64(s)));
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * kInv53; }

  // Uniform on the open interval (0, 1); used where exact 0 must not occur.
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * kInv53;
  }

  // Exponential with the given rate via inverse CDF; strictly positive.
  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Samples an index from a probability vector by walking the CDF. Assumes
  // the entries sum to ~1; floating-point residue falls on the last index.
  int categorical(const Eigen::VectorXd& probs) {
    const double u = uniform01();
    double acc = 0.0;
    const int m = static_cast<int>(probs.size());
    for (int i = 0; i < m; ++i) {
      acc += probs(i);
      if (u < acc) return i;
    }
    return m - 1;
  }

  // Uniform integer in {0, ..., n-1}, unbiased via rejection.
  int uniform_int(int n) {
    const std::uint64_t limit =
        ~std::uint64_t{0} - ~std::uint64_t{0} % static_cast<std::uint64_t>(n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<int>(x % static_cast<std::uint64_t>(n));
  }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace urnbandit
