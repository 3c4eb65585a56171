#include "urnbandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace urnbandit {
namespace {

// Argmin/argmax with ties broken uniformly at random. No draw is consumed
// when the extremum is unique, so traces stay reproducible.
template <typename ValueFn, typename KeepFn>
int tie_broken_extreme(int m, ValueFn value, KeepFn keep, bool minimize,
                       RandomStream& rng) {
  double best = minimize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  std::vector<int> ties;
  for (int a = 0; a < m; ++a) {
    if (!keep(a)) continue;
    const double v = value(a);
    const bool better = minimize ? v < best : v > best;
    if (better) {
      best = v;
      ties.clear();
      ties.push_back(a);
    } else if (v == best) {
      ties.push_back(a);
    }
  }
  if (ties.empty()) throw std::logic_error("no candidate arm");
  if (ties.size() == 1) return ties.front();
  return ties[rng.uniform_int(static_cast<int>(ties.size()))];
}

bool dominates(const EnvState& env, int arm) {
  return env.rewards(arm) >= env.total_reward - env.rewards(arm);
}

}  // namespace

Eigen::VectorXd sample_means(const EnvState& state) {
  const int m = state.num_arms();
  Eigen::VectorXd means = Eigen::VectorXd::Zero(m);
  for (int a = 0; a < m; ++a) {
    if (state.pulls(a) > 0) {
      means(a) = static_cast<double>(state.rewards(a)) /
                 static_cast<double>(state.pulls(a));
    }
  }
  return means;
}

Eigen::VectorXd confidence_radii(const EnvState& state, long horizon) {
  const int m = state.num_arms();
  const double log_horizon = std::log(static_cast<double>(horizon));
  Eigen::VectorXd radii(m);
  for (int a = 0; a < m; ++a) {
    radii(a) = state.pulls(a) > 0
                   ? std::sqrt(log_horizon /
                               (2.0 * static_cast<double>(state.pulls(a))))
                   : std::numeric_limits<double>::infinity();
  }
  return radii;
}

AlnEtcConfig::AlnEtcConfig(long horizon_in, double payment_in, double q_in)
    : horizon(horizon_in), payment(payment_in), q(q_in) {
  if (horizon < 2) throw std::invalid_argument("horizon must be at least 2");
  if (!(payment > 0.0)) throw std::invalid_argument("payment must be positive");
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
}

long AlnEtcConfig::reward_threshold() const {
  return static_cast<long>(
      std::ceil(q * std::log(static_cast<double>(horizon))));
}

PolicyDecision alnetc_decide(AlnEtcState& state, const EnvState& env,
                             const AlnEtcConfig& config, RandomStream& rng) {
  const long n = config.reward_threshold();
  if (state.phase == Phase::kExploration && (env.rewards >= n).all()) {
    state.tau_n = env.t;
    const Eigen::VectorXd means = sample_means(env);
    state.best_empirical = tie_broken_extreme(
        env.num_arms(), [&](int a) { return means(a); },
        [](int) { return true; }, /*minimize=*/false, rng);
    state.phase = Phase::kExploitation;
  }
  if (state.phase == Phase::kExploitation &&
      dominates(env, *state.best_empirical)) {
    state.tau_s = env.t;
    state.phase = Phase::kSelfSustaining;
  }
  switch (state.phase) {
    case Phase::kExploration: {
      const int target = tie_broken_extreme(
          env.num_arms(),
          [&](int a) { return static_cast<double>(env.rewards(a)); },
          [](int) { return true; }, /*minimize=*/true, rng);
      return PolicyDecision::incentivize(target, config.payment,
                                         Phase::kExploration);
    }
    case Phase::kExploitation:
      return PolicyDecision::incentivize(*state.best_empirical, config.payment,
                                         Phase::kExploitation);
    default:
      return PolicyDecision::none(Phase::kSelfSustaining);
  }
}

UcbListConfig::UcbListConfig(long horizon_in, double payment_in)
    : horizon(horizon_in), payment(payment_in) {
  if (horizon < 2) throw std::invalid_argument("horizon must be at least 2");
  if (!(payment > 0.0)) throw std::invalid_argument("payment must be positive");
}

int UcbListState::active_count() const {
  return static_cast<int>(std::count(active.begin(), active.end(), 1));
}

void ucblist_eliminate(std::vector<char>& active, const Eigen::VectorXd& means,
                       const Eigen::VectorXd& radii) {
  const int m = static_cast<int>(active.size());
  bool removed = true;
  while (removed) {
    removed = false;
    int count = 0;
    for (char a : active) count += a;
    if (count <= 1) return;
    std::vector<int> to_drop;
    for (int a = 0; a < m; ++a) {
      if (!active[a]) continue;
      double best_lower = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (i == a || !active[i]) continue;
        best_lower = std::max(best_lower, means(i) - radii(i));
      }
      if (means(a) + radii(a) <= best_lower) to_drop.push_back(a);
    }
    for (int a : to_drop) {
      active[a] = 0;
      removed = true;
    }
  }
}

PolicyDecision ucblist_decide(UcbListState& state, const EnvState& env,
                              const UcbListConfig& config, RandomStream& rng) {
  if (state.phase == Phase::kInitialization) {
    const bool unpulled = (env.pulls == 0).any();
    if (unpulled) {
      const int target = tie_broken_extreme(
          env.num_arms(), [](int) { return 0.0; },
          [&](int a) { return env.pulls(a) == 0; }, /*minimize=*/true, rng);
      return PolicyDecision::incentivize(target, config.payment,
                                         Phase::kInitialization);
    }
    state.phase = Phase::kExploration;
  }
  if (state.phase == Phase::kExploration) {
    const Eigen::VectorXd means = sample_means(env);
    const Eigen::VectorXd radii = confidence_radii(env, config.horizon);
    ucblist_eliminate(state.active, means, radii);
    if (state.active_count() > 1) {
      const int target = tie_broken_extreme(
          env.num_arms(),
          [&](int a) { return static_cast<double>(env.pulls(a)); },
          [&](int a) { return state.active[a] != 0; }, /*minimize=*/true, rng);
      return PolicyDecision::incentivize(target, config.payment,
                                         Phase::kExploration);
    }
    for (int a = 0; a < env.num_arms(); ++a) {
      if (state.active[a]) state.best_empirical = a;
    }
    state.tau_1 = env.t;
    state.phase = Phase::kExploitation;
  }
  if (state.phase == Phase::kExploitation) {
    if (dominates(env, *state.best_empirical)) {
      state.tau_s = env.t;
      state.phase = Phase::kSelfSustaining;
    } else {
      return PolicyDecision::incentivize(*state.best_empirical, config.payment,
                                         Phase::kExploitation);
    }
  }
  return PolicyDecision::none(Phase::kSelfSustaining);
}

PolicyDecision baseline_none_decide(const EnvState&) {
  return PolicyDecision::none(Phase::kSelfSustaining);
}

PolicyDecision explore_only_decide(AlnEtcState& state, const EnvState& env,
                                   const AlnEtcConfig& config,
                                   RandomStream& rng) {
  const long n = config.reward_threshold();
  if (state.phase == Phase::kExploration && (env.rewards >= n).all()) {
    state.tau_n = env.t;
    state.phase = Phase::kSelfSustaining;
  }
  if (state.phase == Phase::kExploration) {
    const int target = tie_broken_extreme(
        env.num_arms(),
        [&](int a) { return static_cast<double>(env.rewards(a)); },
        [](int) { return true; }, /*minimize=*/true, rng);
    return PolicyDecision::incentivize(target, config.payment,
                                       Phase::kExploration);
  }
  return PolicyDecision::none(Phase::kSelfSustaining);
}

PolicyDecision oracle_decide(const BanditInstance& instance) {
  return PolicyDecision::force(instance.best_arm(), Phase::kExploitation);
}

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kAlnEtc: return "alnetc";
    case PolicyKind::kUcbList: return "ucb_list";
    case PolicyKind::kNone: return "none";
    case PolicyKind::kExploreOnly: return "explore_only";
    case PolicyKind::kOracle: return "oracle";
  }
  return "unknown";
}

namespace {

class AlnEtcPolicy : public Policy {
 public:
  AlnEtcPolicy(long horizon, double payment, double q)
      : config_(horizon, payment, q) {}

  PolicyDecision decide(const EnvState& env, RandomStream& rng) override {
    return alnetc_decide(state_, env, config_, rng);
  }
  std::optional<long> exploration_end() const override { return state_.tau_n; }
  std::optional<long> dominance_time() const override { return state_.tau_s; }
  std::optional<int> identified_arm() const override {
    return state_.best_empirical;
  }

 private:
  AlnEtcConfig config_;
  AlnEtcState state_;
};

class UcbListPolicy : public Policy {
 public:
  UcbListPolicy(long horizon, double payment, int num_arms)
      : config_(horizon, payment), state_(num_arms) {}

  PolicyDecision decide(const EnvState& env, RandomStream& rng) override {
    return ucblist_decide(state_, env, config_, rng);
  }
  std::optional<long> exploration_end() const override { return state_.tau_1; }
  std::optional<long> dominance_time() const override { return state_.tau_s; }
  std::optional<int> identified_arm() const override {
    return state_.best_empirical;
  }

 private:
  UcbListConfig config_;
  UcbListState state_;
};

class BaselineNonePolicy : public Policy {
 public:
  PolicyDecision decide(const EnvState& env, RandomStream&) override {
    return baseline_none_decide(env);
  }
};

class ExploreOnlyPolicy : public Policy {
 public:
  ExploreOnlyPolicy(long horizon, double payment, double q)
      : config_(horizon, payment, q) {}

  PolicyDecision decide(const EnvState& env, RandomStream& rng) override {
    return explore_only_decide(state_, env, config_, rng);
  }
  std::optional<long> exploration_end() const override { return state_.tau_n; }

 private:
  AlnEtcConfig config_;
  AlnEtcState state_;
};

class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(const BanditInstance& instance)
      : decision_(oracle_decide(instance)) {}

  PolicyDecision decide(const EnvState&, RandomStream&) override {
    return decision_;
  }

 private:
  PolicyDecision decision_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(const PolicySpec& spec,
                                    const BanditInstance& instance,
                                    long horizon) {
  switch (spec.kind) {
    case PolicyKind::kAlnEtc:
      return std::make_unique<AlnEtcPolicy>(horizon, spec.payment, spec.q);
    case PolicyKind::kUcbList:
      return std::make_unique<UcbListPolicy>(horizon, spec.payment,
                                             instance.num_arms());
    case PolicyKind::kNone:
      return std::make_unique<BaselineNonePolicy>();
    case PolicyKind::kExploreOnly:
      return std::make_unique<ExploreOnlyPolicy>(horizon, spec.payment, spec.q);
    case PolicyKind::kOracle:
      return std::make_unique<OraclePolicy>(instance);
  }
  throw std::invalid_argument("unknown policy kind");
}

}  // namespace urnbandit
