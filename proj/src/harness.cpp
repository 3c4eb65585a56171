#include "urnbandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace urnbandit {
namespace {

double sample_std(double sum, double sumsq, long n) {
  if (n <= 1) return 0.0;
  const double centered = sumsq - sum * sum / static_cast<double>(n);
  return std::sqrt(std::max(0.0, centered) / static_cast<double>(n - 1));
}

}  // namespace

std::vector<long> default_checkpoints(long horizon, int points) {
  std::vector<long> schedule;
  const double log_horizon = std::log(static_cast<double>(horizon));
  for (int i = 0; i < points; ++i) {
    const double fraction =
        points > 1 ? static_cast<double>(i) / (points - 1) : 1.0;
    const long t = std::llround(std::exp(fraction * log_horizon));
    if (schedule.empty() || t > schedule.back()) schedule.push_back(t);
  }
  if (schedule.empty() || schedule.back() != horizon) {
    schedule.push_back(horizon);
  }
  return schedule;
}

ExperimentConfig::ExperimentConfig(BanditInstance instance_in,
                                   PolicySpec policy_in, long horizon_in,
                                   long trials_in,
                                   std::vector<long> checkpoints_in,
                                   std::uint64_t base_seed_in)
    : instance(std::move(instance_in)),
      policy(policy_in),
      horizon(horizon_in),
      trials(trials_in),
      checkpoints(std::move(checkpoints_in)),
      base_seed(base_seed_in) {
  if (horizon < 2) throw std::invalid_argument("horizon must be at least 2");
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  if (checkpoints.empty()) {
    throw std::invalid_argument("checkpoint schedule is empty");
  }
  long prev = 0;
  for (long t : checkpoints) {
    if (t <= prev) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
    prev = t;
  }
  if (checkpoints.back() != horizon) {
    throw std::invalid_argument("the last checkpoint must equal the horizon");
  }
}

TrialRecord run_trial(const ExperimentConfig& config, long trial_index) {
  if (trial_index < 0 || trial_index >= config.trials) {
    throw std::invalid_argument("trial index out of range");
  }
  RandomStream rng = RandomStream::for_trial(config.base_seed,
                                             static_cast<std::uint64_t>(trial_index));
  const auto policy = make_policy(config.policy, config.instance, config.horizon);
  EnvState env(config.instance.num_arms());

  TrialRecord record;
  record.regret.reserve(config.checkpoints.size());
  record.payment.reserve(config.checkpoints.size());
  size_t next_checkpoint = 0;
  for (long t = 0; t < config.horizon; ++t) {
    const PolicyDecision decision = policy->decide(env, rng);
    step(env, config.instance, decision, rng);
    if (next_checkpoint < config.checkpoints.size() &&
        env.t == config.checkpoints[next_checkpoint]) {
      record.regret.push_back(pseudo_regret(env, config.instance));
      record.payment.push_back(env.total_payment);
      ++next_checkpoint;
    }
  }
  record.exploration_end = policy->exploration_end();
  record.dominance_time = policy->dominance_time();
  record.identified_arm = policy->identified_arm();
  record.correct_identification =
      record.identified_arm &&
      *record.identified_arm == config.instance.best_arm();
  return record;
}

double AggregateResult::mean_regret(size_t i) const {
  return regret_sum[i] / static_cast<double>(trial_count);
}

double AggregateResult::std_regret(size_t i) const {
  return sample_std(regret_sum[i], regret_sumsq[i], trial_count);
}

double AggregateResult::mean_payment(size_t i) const {
  return payment_sum[i] / static_cast<double>(trial_count);
}

double AggregateResult::std_payment(size_t i) const {
  return sample_std(payment_sum[i], payment_sumsq[i], trial_count);
}

double AggregateResult::misidentification_rate() const {
  return 1.0 - static_cast<double>(correct_count) /
                   static_cast<double>(trial_count);
}

double AggregateResult::censored_fraction() const {
  return 1.0 - static_cast<double>(dominance_times.size()) /
                   static_cast<double>(trial_count);
}

std::optional<double> AggregateResult::dominance_mean() const {
  if (dominance_times.empty()) return std::nullopt;
  double sum = 0.0;
  for (long t : dominance_times) sum += static_cast<double>(t);
  return sum / static_cast<double>(dominance_times.size());
}

std::optional<double> AggregateResult::dominance_median() const {
  if (dominance_times.empty()) return std::nullopt;
  const size_t n = dominance_times.size();
  if (n % 2 == 1) return static_cast<double>(dominance_times[n / 2]);
  return 0.5 * (static_cast<double>(dominance_times[n / 2 - 1]) +
                static_cast<double>(dominance_times[n / 2]));
}

AggregateResult aggregate_trials(const std::vector<long>& checkpoints,
                                 const std::vector<TrialRecord>& records) {
  AggregateResult out;
  out.checkpoints = checkpoints;
  const size_t k = checkpoints.size();
  out.regret_sum.assign(k, 0.0);
  out.regret_sumsq.assign(k, 0.0);
  out.payment_sum.assign(k, 0.0);
  out.payment_sumsq.assign(k, 0.0);
  for (const TrialRecord& record : records) {
    if (record.regret.size() != k) {
      throw std::invalid_argument("trial record does not match the schedule");
    }
    for (size_t i = 0; i < k; ++i) {
      out.regret_sum[i] += record.regret[i];
      out.regret_sumsq[i] += record.regret[i] * record.regret[i];
      out.payment_sum[i] += record.payment[i];
      out.payment_sumsq[i] += record.payment[i] * record.payment[i];
    }
    if (record.correct_identification) ++out.correct_count;
    if (record.dominance_time) out.dominance_times.push_back(*record.dominance_time);
    ++out.trial_count;
  }
  std::sort(out.dominance_times.begin(), out.dominance_times.end());
  return out;
}

AggregateResult merge(const std::vector<AggregateResult>& partials) {
  if (partials.empty()) throw std::invalid_argument("nothing to merge");
  AggregateResult out = partials.front();
  for (size_t p = 1; p < partials.size(); ++p) {
    const AggregateResult& part = partials[p];
    if (part.checkpoints != out.checkpoints) {
      throw std::invalid_argument("checkpoint schedules differ");
    }
    out.trial_count += part.trial_count;
    out.correct_count += part.correct_count;
    for (size_t i = 0; i < out.checkpoints.size(); ++i) {
      out.regret_sum[i] += part.regret_sum[i];
      out.regret_sumsq[i] += part.regret_sumsq[i];
      out.payment_sum[i] += part.payment_sum[i];
      out.payment_sumsq[i] += part.payment_sumsq[i];
    }
    std::vector<long> pooled;
    pooled.reserve(out.dominance_times.size() + part.dominance_times.size());
    std::merge(out.dominance_times.begin(), out.dominance_times.end(),
               part.dominance_times.begin(), part.dominance_times.end(),
               std::back_inserter(pooled));
    out.dominance_times = std::move(pooled);
  }
  return out;
}

AggregateResult run_experiment(const ExperimentConfig& config, int workers) {
  int thread_count = workers;
  if (thread_count <= 0) {
    thread_count = static_cast<int>(std::thread::hardware_concurrency());
    if (thread_count <= 0) thread_count = 1;
  }
  thread_count = static_cast<int>(
      std::min<long>(thread_count, config.trials));

  std::vector<TrialRecord> records(static_cast<size_t>(config.trials));
  if (thread_count <= 1) {
    for (long i = 0; i < config.trials; ++i) {
      records[static_cast<size_t>(i)] = run_trial(config, i);
    }
  } else {
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      try {
        for (long i = next.fetch_add(1); i < config.trials;
             i = next.fetch_add(1)) {
          records[static_cast<size_t>(i)] = run_trial(config, i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(thread_count));
    for (int w = 0; w < thread_count; ++w) pool.emplace_back(work);
    for (std::thread& worker_thread : pool) worker_thread.join();
    if (failure) std::rethrow_exception(failure);
  }
  return aggregate_trials(config.checkpoints, records);
}

}  // namespace urnbandit
