#include "urnbandit/policies.hpp"

#include <cmath>
#include <vector>

#include "testing.hpp"
#include "urnbandit/harness.hpp"

using namespace urnbandit;

namespace {

BanditInstance fig1_instance(double alpha = 1.5) {
  return BanditInstance({{0.3, 100.0}, {0.5, 1.0}},
                        FeedbackFunction::polynomial(1.0, alpha),
                        ImpactFunction::payment_linear());
}

EnvState make_state(const std::vector<long>& pulls,
                    const std::vector<long>& rewards) {
  EnvState state(static_cast<int>(pulls.size()));
  for (size_t a = 0; a < pulls.size(); ++a) {
    state.pulls(static_cast<long>(a)) = pulls[a];
    state.rewards(static_cast<long>(a)) = rewards[a];
    state.t += pulls[a];
    state.total_reward += rewards[a];
  }
  return state;
}

void test_alnetc_threshold() {
  // ceil(q ln T): q = 15, T = 1e4 -> ceil(138.155) = 139.
  CHECK_EQ(AlnEtcConfig(10000, 1.5, 15.0).reward_threshold(), 139L);
  CHECK_EQ(AlnEtcConfig(10000, 1.5, 20.0).reward_threshold(), 185L);
  CHECK_THROWS(AlnEtcConfig(1, 1.5, 15.0), std::invalid_argument);
  CHECK_THROWS(AlnEtcConfig(100, 0.0, 15.0), std::invalid_argument);
  CHECK_THROWS(AlnEtcConfig(100, 1.5, -1.0), std::invalid_argument);
}

void test_alnetc_exploration_targets_lowest_reward() {
  RandomStream rng(1);
  AlnEtcConfig config(100, 1.5, 2.2);  // n = ceil(2.2 ln 100) = 11
  AlnEtcState state;
  const EnvState env = make_state({10, 6}, {5, 3});
  const PolicyDecision decision = alnetc_decide(state, env, config, rng);
  CHECK(decision.incentivized_arm.has_value());
  CHECK_EQ(*decision.incentivized_arm, 1);
  CHECK_EQ(decision.payment, 1.5);
  CHECK(decision.phase == Phase::kExploration);
  CHECK(state.phase == Phase::kExploration);
}

void test_alnetc_transition_to_exploitation() {
  RandomStream rng(2);
  AlnEtcConfig config(100, 1.5, 2.2);  // n = 11
  AlnEtcState state;
  // S = [12, 11] meets the threshold; sample means [0.3, 0.55] pick arm 1.
  const EnvState env = make_state({40, 20}, {12, 11});
  const PolicyDecision decision = alnetc_decide(state, env, config, rng);
  CHECK(state.phase == Phase::kExploitation);
  CHECK_EQ(*state.best_empirical, 1);
  CHECK_EQ(*state.tau_n, env.t);
  CHECK_EQ(*decision.incentivized_arm, 1);
  CHECK(decision.phase == Phase::kExploitation);
}

void test_alnetc_dominance_boundary() {
  RandomStream rng(3);
  AlnEtcConfig config(100, 1.5, 1.0);
  AlnEtcState state;
  state.phase = Phase::kExploitation;
  state.best_empirical = 1;
  state.tau_n = 5;
  // Equality counts as dominant: 4 >= 4.
  const EnvState env = make_state({10, 8}, {4, 4});
  const PolicyDecision decision = alnetc_decide(state, env, config, rng);
  CHECK(state.phase == Phase::kSelfSustaining);
  CHECK_EQ(*state.tau_s, env.t);
  CHECK(!decision.incentivized_arm.has_value());
  CHECK_EQ(decision.payment, 0.0);
}

void test_ucblist_elimination_rule() {
  // 0.2 + 0.05 <= 0.6 - 0.05 removes arm 0.
  std::vector<char> active{1, 1};
  Eigen::VectorXd means(2), radii(2);
  means << 0.2, 0.6;
  radii << 0.05, 0.05;
  ucblist_eliminate(active, means, radii);
  CHECK_EQ(static_cast<int>(active[0]), 0);
  CHECK_EQ(static_cast<int>(active[1]), 1);

  // Wide intervals: 0.45 + 0.2 > 0.55 - 0.2, nobody leaves.
  active = {1, 1};
  means << 0.45, 0.55;
  radii << 0.2, 0.2;
  ucblist_eliminate(active, means, radii);
  CHECK_EQ(static_cast<int>(active[0]), 1);
  CHECK_EQ(static_cast<int>(active[1]), 1);
}

void test_ucblist_cascading_elimination() {
  // Removing the middle arm must not resurrect the comparison for others;
  // the fixed point drops both dominated arms in one decide.
  std::vector<char> active{1, 1, 1};
  Eigen::VectorXd means(3), radii(3);
  means << 0.1, 0.3, 0.9;
  radii << 0.05, 0.05, 0.05;
  ucblist_eliminate(active, means, radii);
  CHECK_EQ(static_cast<int>(active[0]), 0);
  CHECK_EQ(static_cast<int>(active[1]), 0);
  CHECK_EQ(static_cast<int>(active[2]), 1);
}

void test_ucblist_initialization_targets_unpulled() {
  RandomStream rng(4);
  UcbListConfig config(100, 1.2);
  UcbListState state(2);
  const EnvState env = make_state({0, 3}, {0, 2});
  const PolicyDecision decision = ucblist_decide(state, env, config, rng);
  CHECK(decision.phase == Phase::kInitialization);
  CHECK_EQ(*decision.incentivized_arm, 0);
}

void test_ucblist_exploration_incentivizes_least_pulled_active() {
  RandomStream rng(5);
  UcbListConfig config(100, 1.2);
  UcbListState state(3);
  state.phase = Phase::kExploration;
  const EnvState env = make_state({4, 9, 6}, {2, 4, 4});
  const PolicyDecision decision = ucblist_decide(state, env, config, rng);
  CHECK(decision.phase == Phase::kExploration);
  CHECK_EQ(*decision.incentivized_arm, 0);
  CHECK_EQ(state.active_count(), 3);
}

void test_ucblist_identification_and_exploitation() {
  RandomStream rng(6);
  UcbListConfig config(10000, 1.2);
  UcbListState state(2);
  state.phase = Phase::kExploration;
  // Tight intervals: arm 0 gets eliminated, arm 1 becomes the candidate and
  // is incentivized because it has not produced half of the reward yet.
  const EnvState env = make_state({2000, 500}, {400, 300});
  const PolicyDecision decision = ucblist_decide(state, env, config, rng);
  CHECK(state.phase == Phase::kExploitation);
  CHECK_EQ(*state.best_empirical, 1);
  CHECK_EQ(*state.tau_1, env.t);
  CHECK_EQ(*decision.incentivized_arm, 1);

  // Dominance already holds here, so the policy lets go immediately.
  UcbListState done(2);
  done.phase = Phase::kExploitation;
  done.best_empirical = 1;
  done.tau_1 = 10;
  done.active = {0, 1};
  const EnvState dominant = make_state({500, 500}, {100, 300});
  const PolicyDecision rest = ucblist_decide(done, dominant, config, rng);
  CHECK(done.phase == Phase::kSelfSustaining);
  CHECK(!rest.incentivized_arm.has_value());
  CHECK_EQ(*done.tau_s, dominant.t);
}

void test_baselines() {
  const EnvState env = make_state({3, 4}, {1, 2});
  const PolicyDecision none = baseline_none_decide(env);
  CHECK(!none.incentivized_arm.has_value());
  CHECK(!none.forced_arm.has_value());
  CHECK(none.phase == Phase::kSelfSustaining);

  // Explore-only matches the exploration decision, then lets go for good.
  RandomStream rng(7);
  AlnEtcConfig config(100, 1.5, 2.2);  // n = 11
  AlnEtcState state;
  const EnvState exploring = make_state({10, 6}, {5, 3});
  const PolicyDecision during = explore_only_decide(state, exploring, config, rng);
  CHECK_EQ(*during.incentivized_arm, 1);
  CHECK(during.phase == Phase::kExploration);

  const EnvState finished = make_state({40, 24}, {12, 11});
  const PolicyDecision after = explore_only_decide(state, finished, config, rng);
  CHECK(state.phase == Phase::kSelfSustaining);
  CHECK_EQ(*state.tau_n, finished.t);
  CHECK(!after.incentivized_arm.has_value());
}

void test_explore_only_pays_for_exploration_exactly() {
  const auto instance = fig1_instance();
  const long horizon = 4000;
  AlnEtcConfig config(horizon, 1.5, 3.0);
  AlnEtcState state;
  EnvState env(2);
  RandomStream rng = RandomStream::for_trial(80, 0);
  for (long t = 0; t < horizon; ++t) {
    const PolicyDecision decision = explore_only_decide(state, env, config, rng);
    step(env, instance, decision, rng);
  }
  CHECK(state.tau_n.has_value());
  CHECK_NEAR(env.total_payment, 1.5 * static_cast<double>(*state.tau_n), 1e-9);
  CHECK_EQ(env.incentivized_steps, *state.tau_n);
}

void test_oracle_forces_best_arm() {
  const auto instance = fig1_instance();
  const PolicyDecision decision = oracle_decide(instance);
  CHECK_EQ(*decision.forced_arm, 1);
  CHECK(!decision.incentivized_arm.has_value());
  CHECK_EQ(decision.payment, 0.0);
}

void test_oracle_regret_is_centered_on_zero() {
  // The oracle's reward total is Binomial(T, mu*), so across trials the mean
  // pseudo-regret concentrates on zero.
  const auto instance = fig1_instance();
  const long horizon = 1000;
  const int trials = 1000;
  ExperimentConfig config(instance, PolicySpec{PolicyKind::kOracle}, horizon,
                          trials, {horizon}, 2024);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const TrialRecord record = run_trial(config, i);
    sum += record.regret.back();
    sumsq += record.regret.back() * record.regret.back();
    CHECK_EQ(record.payment.back(), 0.0);
  }
  const double mean = sum / trials;
  const double stderr_mean =
      std::sqrt((sumsq / trials - mean * mean) / trials);
  CHECK(std::abs(mean) <= 3.0 * stderr_mean);
}

// Full-trajectory property check driven by the real dynamics: phases only
// advance, exploration exits exactly when every arm reaches n, dominance
// holds at tau_s, and nothing is charged afterwards.
void test_alnetc_trajectory_invariants() {
  const auto instance = fig1_instance();
  const long horizon = 4000;
  AlnEtcConfig config(horizon, 1.5, 4.0);
  const long n = config.reward_threshold();
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream rng = RandomStream::for_trial(77, trial);
    AlnEtcState state;
    EnvState env(2);
    Phase last_phase = Phase::kExploration;
    bool saw_exploration_exit = false;
    for (long t = 0; t < horizon; ++t) {
      const bool below_before = (env.rewards < n).any();
      const PolicyDecision decision = alnetc_decide(state, env, config, rng);
      CHECK(static_cast<int>(state.phase) >= static_cast<int>(last_phase));
      last_phase = state.phase;
      if (state.tau_n && !saw_exploration_exit && *state.tau_n == env.t) {
        saw_exploration_exit = true;
        CHECK(!below_before);
        CHECK((env.rewards >= n).all());
      }
      if (state.phase == Phase::kExploration) {
        CHECK(below_before);  // some arm still short of n
      }
      if (state.tau_s && *state.tau_s == env.t) {
        const long star = *state.best_empirical;
        CHECK(env.rewards(star) >= env.total_reward - env.rewards(star));
      }
      if (state.tau_s) {
        CHECK(!decision.incentivized_arm.has_value());
      }
      step(env, instance, decision, rng);
    }
    CHECK(state.tau_n.has_value());
    CHECK(state.tau_s.has_value());
    CHECK(*state.tau_n <= *state.tau_s);
    CHECK(*state.tau_s <= horizon);
  }
}

void test_ucblist_trajectory_invariants() {
  const auto instance = BanditInstance(
      {{0.2, 10.0}, {0.4, 10.0}, {0.6, 1.0}},
      FeedbackFunction::polynomial(1.0, 1.5), ImpactFunction::payment_linear());
  const long horizon = 20000;
  UcbListConfig config(horizon, 1.2);
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream rng = RandomStream::for_trial(78, trial);
    UcbListState state(3);
    EnvState env(3);
    int last_active = 3;
    double payment_at_tau_s = -1.0;
    for (long t = 0; t < horizon; ++t) {
      const PolicyDecision decision = ucblist_decide(state, env, config, rng);
      // The candidate set never grows, and only its members get incentives
      // during exploration.
      CHECK(state.active_count() <= last_active);
      last_active = state.active_count();
      if (decision.phase == Phase::kExploration && decision.incentivized_arm) {
        CHECK(state.active[static_cast<size_t>(*decision.incentivized_arm)] != 0);
      }
      if (state.tau_s && payment_at_tau_s < 0.0) {
        payment_at_tau_s = env.total_payment;
      }
      if (payment_at_tau_s >= 0.0) {
        CHECK_EQ(env.total_payment, payment_at_tau_s);
        CHECK(!decision.incentivized_arm.has_value());
      }
      step(env, instance, decision, rng);
    }
    CHECK(state.tau_1.has_value());
    CHECK(state.tau_s.has_value());
    CHECK(*state.tau_1 <= *state.tau_s);
  }
}

void test_identified_arm_frozen_at_tau_n() {
  const auto instance = fig1_instance();
  const long horizon = 4000;
  AlnEtcConfig config(horizon, 1.5, 4.0);
  RandomStream rng = RandomStream::for_trial(79, 0);
  AlnEtcState state;
  EnvState env(2);
  std::optional<int> first_identification;
  for (long t = 0; t < horizon; ++t) {
    const PolicyDecision decision = alnetc_decide(state, env, config, rng);
    if (state.best_empirical && !first_identification) {
      first_identification = state.best_empirical;
    }
    if (first_identification) {
      CHECK_EQ(*state.best_empirical, *first_identification);
    }
    step(env, instance, decision, rng);
  }
}

}  // namespace

int main() {
  RUN_TEST(test_alnetc_threshold);
  RUN_TEST(test_alnetc_exploration_targets_lowest_reward);
  RUN_TEST(test_alnetc_transition_to_exploitation);
  RUN_TEST(test_alnetc_dominance_boundary);
  RUN_TEST(test_ucblist_elimination_rule);
  RUN_TEST(test_ucblist_cascading_elimination);
  RUN_TEST(test_ucblist_initialization_targets_unpulled);
  RUN_TEST(test_ucblist_exploration_incentivizes_least_pulled_active);
  RUN_TEST(test_ucblist_identification_and_exploitation);
  RUN_TEST(test_baselines);
  RUN_TEST(test_explore_only_pays_for_exploration_exactly);
  RUN_TEST(test_oracle_forces_best_arm);
  RUN_TEST(test_oracle_regret_is_centered_on_zero);
  RUN_TEST(test_alnetc_trajectory_invariants);
  RUN_TEST(test_ucblist_trajectory_invariants);
  RUN_TEST(test_identified_arm_frozen_at_tau_n);
  std::cout << "policies_test passed\n";
  return 0;
}
