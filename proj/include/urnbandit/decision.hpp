#pragma once

#include <optional>

namespace urnbandit {

enum class Phase { kInitialization, kExploration, kExploitation, kSelfSustaining };

const char* to_string(Phase phase);

// One per-step instruction from a policy to the environment. A positive
// payment is charged exactly when an incentivized arm is present. The forced
// arm is the oracle's channel: the user pulls it with probability one and
// nothing is charged.
struct PolicyDecision {
  std::optional<int> incentivized_arm;
  double payment = 0.0;
  std::optional<int> forced_arm;
  Phase phase = Phase::kSelfSustaining;

  static PolicyDecision none(Phase phase) {
    PolicyDecision d;
    d.phase = phase;
    return d;
  }

  static PolicyDecision incentivize(int arm, double payment, Phase phase) {
    PolicyDecision d;
    d.incentivized_arm = arm;
    d.payment = payment;
    d.phase = phase;
    return d;
  }

  static PolicyDecision force(int arm, Phase phase) {
    PolicyDecision d;
    d.forced_arm = arm;
    d.phase = phase;
    return d;
  }
};

}  // namespace urnbandit
