#pragma once

#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "urnbandit/dynamics.hpp"
#include "urnbandit/random.hpp"

namespace urnbandit {

// Ordered arm indices of reward-generation events. Event times are filled by
// the continuous-clock generator and left empty by the discrete simulator.
struct EmbeddedSequence {
  std::vector<int> indices;
  std::vector<double> event_times;
};

struct AttractionOutcome {
  std::optional<int> winner;
  std::optional<long> events_to_attraction;  // 1-based start of the streak

  bool censored() const { return !winner.has_value(); }
};

// Lazy continuous-time generator of the reward order: each arm keeps a next
// event clock; after its n-th event the clock advances by an exponential with
// rate mu_a * F(n + theta_a). Events are emitted in increasing clock order
// from a min-heap over the arms.
class ExponentialEmbedding {
 public:
  ExponentialEmbedding(const BanditInstance& instance, RandomStream& rng);

  // Next reward-generation event as (arm index, event time).
  std::pair<int, double> next();

 private:
  const BanditInstance* instance_;
  RandomStream* rng_;
  ArrayXl counts_;
  std::priority_queue<std::pair<double, int>,
                      std::vector<std::pair<double, int>>,
                      std::greater<std::pair<double, int>>>
      clocks_;
};

// First k events of the embedding.
EmbeddedSequence embedded_sequence(const BanditInstance& instance, long k,
                                   RandomStream& rng);

// Exact probability of observing the given reward-order prefix, from the
// conditional recursion mu_i F(N_i + theta_i) / sum_j mu_j F(N_j + theta_j)
// with N_i the count of arm i among the earlier entries. Prefixes longer
// than 20 are rejected to keep the product away from underflow.
double exact_sequence_probability(const BanditInstance& instance,
                                  std::span<const int> prefix);

// First k reward-generating arms of the discrete-time environment run with
// no incentive (zero-reward steps are skipped).
EmbeddedSequence direct_reward_sequence(const BanditInstance& instance, long k,
                                        RandomStream& rng);

// 1-based index of the first event opening a run of `streak` consecutive
// events on one arm, or nullopt if the sequence has none.
std::optional<long> find_streak_start(std::span<const int> indices,
                                      long streak);

// Runs the embedding until one arm produces `streak` consecutive events
// (a finite proxy for preference monopoly) or until event_cap events have
// been generated, in which case the outcome is censored.
AttractionOutcome estimate_attraction(const BanditInstance& instance,
                                      long streak, long event_cap,
                                      RandomStream& rng);

// Qualitative long-run behavior of polynomial feedback x^alpha: a single arm
// eventually takes all rewards (alpha > 1), random limiting shares as in a
// classic Polya urn (alpha = 1), or deterministic positive shares (alpha < 1).
enum class FeedbackRegime { kMonopoly, kPolyaMixing, kDeterministicShares };

FeedbackRegime classify_regime(double alpha);

const char* to_string(FeedbackRegime regime);

}  // namespace urnbandit
