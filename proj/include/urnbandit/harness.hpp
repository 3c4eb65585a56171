#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urnbandit/dynamics.hpp"
#include "urnbandit/policies.hpp"

namespace urnbandit {

// Checkpoint schedule of `points` log-spaced steps ending exactly at the
// horizon (deduplicated, so short horizons yield fewer points).
std::vector<long> default_checkpoints(long horizon, int points = 50);

struct ExperimentConfig {
  ExperimentConfig(BanditInstance instance, PolicySpec policy, long horizon,
                   long trials, std::vector<long> checkpoints,
                   std::uint64_t base_seed);

  BanditInstance instance;
  PolicySpec policy;
  long horizon;
  long trials;
  std::vector<long> checkpoints;
  std::uint64_t base_seed;
};

struct TrialRecord {
  std::vector<double> regret;   // pseudo-regret at each checkpoint
  std::vector<double> payment;  // accumulated payment at each checkpoint
  std::optional<long> exploration_end;
  std::optional<long> dominance_time;  // unset = censored at the horizon
  std::optional<int> identified_arm;
  bool correct_identification = false;
};

// Runs one trial on an independent stream derived from (base seed, index).
// A pure function of its arguments.
TrialRecord run_trial(const ExperimentConfig& config, long trial_index);

// Mergeable cross-trial summary. Means/stds are held as count + sum +
// sum-of-squares per checkpoint; dominance times of uncensored trials are
// kept sorted so pooling is order-independent.
struct AggregateResult {
  std::vector<long> checkpoints;
  long trial_count = 0;
  std::vector<double> regret_sum, regret_sumsq;
  std::vector<double> payment_sum, payment_sumsq;
  long correct_count = 0;
  std::vector<long> dominance_times;  // sorted ascending

  double mean_regret(size_t i) const;
  double std_regret(size_t i) const;  // sample std, n-1 denominator; 0 if n=1
  double mean_payment(size_t i) const;
  double std_payment(size_t i) const;
  double misidentification_rate() const;
  double censored_fraction() const;
  std::optional<double> dominance_mean() const;
  std::optional<double> dominance_median() const;
};

AggregateResult aggregate_trials(const std::vector<long>& checkpoints,
                                 const std::vector<TrialRecord>& records);

// Exact pooling of partial aggregates over identical checkpoint schedules.
AggregateResult merge(const std::vector<AggregateResult>& partials);

// Runs every trial (in parallel when workers > 1) and aggregates in trial
// order, so the result is independent of the worker count. workers <= 0
// selects the hardware concurrency.
AggregateResult run_experiment(const ExperimentConfig& config, int workers = 1);

}  // namespace urnbandit
