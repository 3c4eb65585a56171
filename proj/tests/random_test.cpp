#include "urnbandit/random.hpp"

#include <cmath>
#include <vector>

#include "testing.hpp"

using urnbandit::RandomStream;

namespace {

void test_trial_streams_are_deterministic() {
  RandomStream a = RandomStream::for_trial(1234, 7);
  RandomStream b = RandomStream::for_trial(1234, 7);
  for (int i = 0; i < 100; ++i) CHECK_EQ(a.uniform01(), b.uniform01());

  RandomStream c = RandomStream::for_trial(1234, 8);
  bool any_difference = false;
  RandomStream a2 = RandomStream::for_trial(1234, 7);
  for (int i = 0; i < 100; ++i) {
    if (a2.uniform01() != c.uniform01()) any_difference = true;
  }
  CHECK(any_difference);
}

void test_uniform_bounds() {
  RandomStream rng(99);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0 && u < 1.0);
    const double v = rng.uniform_pos();
    CHECK(v > 0.0 && v < 1.0);
  }
}

void test_exponential_mean() {
  RandomStream rng(5);
  const double rate = 2.5;
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.exponential(rate);
    CHECK(x > 0.0);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double stderr_mean = std::sqrt((sumsq / n - mean * mean) / n);
  CHECK_NEAR(mean, 1.0 / rate, 3.0 * stderr_mean);
}

void test_bernoulli_frequency() {
  RandomStream rng(17);
  const double p = 0.3;
  const int n = 100000;
  long hits = 0;
  for (int i = 0; i < n; ++i) hits += rng.bernoulli(p) ? 1 : 0;
  CHECK_NEAR(static_cast<double>(hits) / n, p,
             3.0 * std::sqrt(p * (1 - p) / n));
}

void test_categorical_frequencies() {
  RandomStream rng(23);
  Eigen::VectorXd probs(3);
  probs << 0.2, 0.5, 0.3;
  const int n = 100000;
  std::vector<long> counts(3, 0);
  for (int i = 0; i < n; ++i) ++counts[static_cast<size_t>(rng.categorical(probs))];
  for (int a = 0; a < 3; ++a) {
    CHECK_NEAR(static_cast<double>(counts[a]) / n, probs(a),
               3.0 * std::sqrt(probs(a) * (1 - probs(a)) / n));
  }
}

void test_uniform_int_range() {
  RandomStream rng(31);
  std::vector<long> counts(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const int v = rng.uniform_int(5);
    CHECK(v >= 0 && v < 5);
    ++counts[static_cast<size_t>(v)];
  }
  for (long c : counts) CHECK(c > 8000);
}

}  // namespace

int main() {
  RUN_TEST(test_trial_streams_are_deterministic);
  RUN_TEST(test_uniform_bounds);
  RUN_TEST(test_exponential_mean);
  RUN_TEST(test_bernoulli_frequency);
  RUN_TEST(test_categorical_frequencies);
  RUN_TEST(test_uniform_int_range);
  std::cout << "random_test passed\n";
  return 0;
}
