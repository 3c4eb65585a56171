#include "urnbandit/embedding.hpp"

#include <stdexcept>
#include <string>

namespace urnbandit {

ExponentialEmbedding::ExponentialEmbedding(const BanditInstance& instance,
                                           RandomStream& rng)
    : instance_(&instance),
      rng_(&rng),
      counts_(ArrayXl::Zero(instance.num_arms())) {
  for (int a = 0; a < instance.num_arms(); ++a) {
    const double rate = instance.mean(a) * instance.feedback()(instance.bias(a));
    clocks_.emplace(rng.exponential(rate), a);
  }
}

std::pair<int, double> ExponentialEmbedding::next() {
  const auto [time, arm] = clocks_.top();
  clocks_.pop();
  counts_(arm) += 1;
  const double rate =
      instance_->mean(arm) *
      instance_->feedback()(static_cast<double>(counts_(arm)) +
                            instance_->bias(arm));
  clocks_.emplace(time + rng_->exponential(rate), arm);
  return {arm, time};
}

EmbeddedSequence embedded_sequence(const BanditInstance& instance, long k,
                                   RandomStream& rng) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  ExponentialEmbedding generator(instance, rng);
  EmbeddedSequence seq;
  seq.indices.reserve(static_cast<size_t>(k));
  seq.event_times.reserve(static_cast<size_t>(k));
  for (long j = 0; j < k; ++j) {
    const auto [arm, time] = generator.next();
    seq.indices.push_back(arm);
    seq.event_times.push_back(time);
  }
  return seq;
}

double exact_sequence_probability(const BanditInstance& instance,
                                  std::span<const int> prefix) {
  if (prefix.size() > 20) {
    throw std::invalid_argument("prefix length is capped at 20");
  }
  const int m = instance.num_arms();
  ArrayXl counts = ArrayXl::Zero(m);
  double probability = 1.0;
  for (int arm : prefix) {
    if (arm < 0 || arm >= m) {
      throw std::invalid_argument("prefix contains an invalid arm index");
    }
    double numerator = 0.0;
    double denominator = 0.0;
    for (int i = 0; i < m; ++i) {
      const double w = instance.mean(i) *
                       instance.feedback()(static_cast<double>(counts(i)) +
                                           instance.bias(i));
      denominator += w;
      if (i == arm) numerator = w;
    }
    probability *= numerator / denominator;
    counts(arm) += 1;
  }
  return probability;
}

EmbeddedSequence direct_reward_sequence(const BanditInstance& instance, long k,
                                        RandomStream& rng) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  EnvState state(instance.num_arms());
  const PolicyDecision hands_off = PolicyDecision::none(Phase::kSelfSustaining);
  EmbeddedSequence seq;
  seq.indices.reserve(static_cast<size_t>(k));
  while (static_cast<long>(seq.indices.size()) < k) {
    const StepOutcome outcome = step(state, instance, hands_off, rng);
    if (outcome.reward == 1) seq.indices.push_back(outcome.pulled_arm);
  }
  return seq;
}

std::optional<long> find_streak_start(std::span<const int> indices,
                                      long streak) {
  if (streak < 1) throw std::invalid_argument("streak must be at least 1");
  int run_arm = -1;
  long run_length = 0;
  long run_start = 0;
  for (size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] == run_arm) {
      ++run_length;
    } else {
      run_arm = indices[j];
      run_length = 1;
      run_start = static_cast<long>(j) + 1;
    }
    if (run_length >= streak) return run_start;
  }
  return std::nullopt;
}

AttractionOutcome estimate_attraction(const BanditInstance& instance,
                                      long streak, long event_cap,
                                      RandomStream& rng) {
  if (streak < 1) throw std::invalid_argument("streak must be at least 1");
  if (event_cap < streak) {
    throw std::invalid_argument("event cap must be at least the streak");
  }
  ExponentialEmbedding generator(instance, rng);
  int run_arm = -1;
  long run_length = 0;
  long run_start = 0;
  for (long j = 1; j <= event_cap; ++j) {
    const int arm = generator.next().first;
    if (arm == run_arm) {
      ++run_length;
    } else {
      run_arm = arm;
      run_length = 1;
      run_start = j;
    }
    if (run_length >= streak) {
      AttractionOutcome outcome;
      outcome.winner = run_arm;
      outcome.events_to_attraction = run_start;
      return outcome;
    }
  }
  return AttractionOutcome{};
}

FeedbackRegime classify_regime(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (alpha > 1.0) return FeedbackRegime::kMonopoly;
  if (alpha == 1.0) return FeedbackRegime::kPolyaMixing;
  return FeedbackRegime::kDeterministicShares;
}

const char* to_string(FeedbackRegime regime) {
  switch (regime) {
    case FeedbackRegime::kMonopoly: return "monopoly";
    case FeedbackRegime::kPolyaMixing: return "polya_mixing";
    case FeedbackRegime::kDeterministicShares: return "deterministic_shares";
  }
  return "unknown";
}

}  // namespace urnbandit
