#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "urnbandit/decision.hpp"
#include "urnbandit/dynamics.hpp"
#include "urnbandit/random.hpp"

namespace urnbandit {

// Per-arm sample means S_a / T_a from the current counters (0 for unpulled
// arms). Evaluated at decision time, immediately before the next step.
Eigen::VectorXd sample_means(const EnvState& state);

// Confidence radii sqrt(ln T / (2 T_a)); infinite for unpulled arms.
Eigen::VectorXd confidence_radii(const EnvState& state, long horizon);

// ---------------------------------------------------------------------------
// At-least-n explore-then-commit: incentivized exploration until every arm
// has collected n = ceil(q ln T) rewards, incentivized exploitation of the
// best-empirical arm until it has produced at least half of the total
// reward, then hands-off self-sustaining.

struct AlnEtcConfig {
  AlnEtcConfig(long horizon, double payment, double q);

  long horizon;
  double payment;
  double q;

  long reward_threshold() const;  // n = ceil(q ln T)
};

struct AlnEtcState {
  Phase phase = Phase::kExploration;
  std::optional<int> best_empirical;
  std::optional<long> tau_n;  // step at which exploration finished
  std::optional<long> tau_s;  // step at which dominance was reached
};

PolicyDecision alnetc_decide(AlnEtcState& state, const EnvState& env,
                             const AlnEtcConfig& config, RandomStream& rng);

// ---------------------------------------------------------------------------
// UCB-List: incentivized round-robin initialization, confidence-interval
// elimination down to a single candidate, then the same dominance-building
// exploitation phase as above.

struct UcbListConfig {
  UcbListConfig(long horizon, double payment);

  long horizon;
  double payment;
};

struct UcbListState {
  explicit UcbListState(int num_arms)
      : active(static_cast<size_t>(num_arms), 1) {}

  Phase phase = Phase::kInitialization;
  std::vector<char> active;  // membership in the candidate set U
  std::optional<int> best_empirical;
  std::optional<long> tau_1;
  std::optional<long> tau_s;

  int active_count() const;
};

PolicyDecision ucblist_decide(UcbListState& state, const EnvState& env,
                              const UcbListConfig& config, RandomStream& rng);

// Removes every active arm whose upper confidence bound is at or below the
// best lower confidence bound among the other active arms, repeating until
// no arm qualifies. The arm with the highest lower bound always survives.
void ucblist_eliminate(std::vector<char>& active,
                       const Eigen::VectorXd& means,
                       const Eigen::VectorXd& radii);

// ---------------------------------------------------------------------------
// Baselines and the oracle.

// Never incentivizes.
PolicyDecision baseline_none_decide(const EnvState& env);

// Runs the same incentivized exploration as above, then stops incentivizing
// for good (no dominance building).
PolicyDecision explore_only_decide(AlnEtcState& state, const EnvState& env,
                                   const AlnEtcConfig& config,
                                   RandomStream& rng);

// Forces the true best arm every step at zero charge (infinite-impact limit).
PolicyDecision oracle_decide(const BanditInstance& instance);

// ---------------------------------------------------------------------------
// Harness-facing wrapper.

enum class PolicyKind { kAlnEtc, kUcbList, kNone, kExploreOnly, kOracle };

const char* to_string(PolicyKind kind);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kNone;
  double payment = 0.0;  // used by alnetc, ucb_list, explore_only
  double q = 0.0;        // used by alnetc, explore_only
};

// Stateful per-trial controller over one of the five policies.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual PolicyDecision decide(const EnvState& env, RandomStream& rng) = 0;

  // tau_n (explore-then-commit family) or tau_1 (UCB-List), once reached.
  virtual std::optional<long> exploration_end() const { return std::nullopt; }
  // tau_s, once dominance was reached; unset means censored at the horizon.
  virtual std::optional<long> dominance_time() const { return std::nullopt; }
  virtual std::optional<int> identified_arm() const { return std::nullopt; }
};

std::unique_ptr<Policy> make_policy(const PolicySpec& spec,
                                    const BanditInstance& instance,
                                    long horizon);

}  // namespace urnbandit
