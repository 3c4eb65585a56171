#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urnbandit/decision.hpp"
#include "urnbandit/random.hpp"

namespace urnbandit {

using ArrayXl = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;

// Raised when a feedback evaluation produces a non-finite value; carries the
// offending arm index (-1 when the failure is in the normalizing sum).
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(int arm, const std::string& message)
      : std::runtime_error(message), arm_(arm) {}
  int arm() const { return arm_; }

 private:
  int arm_;
};

// Positive increasing map driving the self-reinforcing preferences. The
// polynomial form is C * x^alpha; user-supplied callables are validated by
// sampling (positive and nondecreasing on x = 1..1000).
class FeedbackFunction {
 public:
  static FeedbackFunction polynomial(double coefficient, double alpha);
  static FeedbackFunction user_supplied(std::function<double(double)> fn);

  double operator()(double x) const {
    return polynomial_ ? coefficient_ * std::pow(x, alpha_) : fn_(x);
  }

  bool is_polynomial() const { return polynomial_; }
  double alpha() const;
  double coefficient() const;

 private:
  FeedbackFunction() = default;

  bool polynomial_ = false;
  double coefficient_ = 0.0;
  double alpha_ = 0.0;
  std::function<double(double)> fn_;
};

// Impact of offering a payment on the current user's preferences, already in
// normalized form: an incentivized arm's rate becomes (rate + g) / (1 + g).
// Zero payment always maps to zero impact.
class ImpactFunction {
 public:
  enum class Kind { kConstant, kPaymentLinear, kUserSupplied };

  // G(b, t) = g for any positive payment b.
  static ImpactFunction constant(double g);
  // G(b, t) = b.
  static ImpactFunction payment_linear();
  // Arbitrary (payment, step) map; checked for G(0, t) = 0 and monotonicity
  // in the payment on a sampled grid.
  static ImpactFunction user_supplied(std::function<double(double, long)> fn);

  double operator()(double payment, long step) const;

  Kind kind() const { return kind_; }
  double constant_value() const;

 private:
  ImpactFunction() = default;

  Kind kind_ = Kind::kPaymentLinear;
  double value_ = 0.0;
  std::function<double(double, long)> fn_;
};

struct ArmSpec {
  double mean;  // Bernoulli reward mean, in (0, 1]
  double bias;  // initial preference bias, > 0
};

// Immutable environment description: arms, feedback, and incentive impact.
// Construction rejects fewer than two arms, out-of-range parameters, and a
// tied best arm. Symmetric instances (tied top mean) are still meaningful
// for the reward-order and attraction studies, which never ask for a best
// arm; those go through allow_tied_best, and the best-arm accessors throw
// if the tie was allowed.
class BanditInstance {
 public:
  BanditInstance(std::vector<ArmSpec> arms, FeedbackFunction feedback,
                 ImpactFunction impact);

  static BanditInstance allow_tied_best(std::vector<ArmSpec> arms,
                                        FeedbackFunction feedback,
                                        ImpactFunction impact);

  int num_arms() const { return static_cast<int>(means_.size()); }
  double mean(int arm) const { return means_(arm); }
  double bias(int arm) const { return biases_(arm); }
  const Eigen::VectorXd& means() const { return means_; }
  const Eigen::VectorXd& biases() const { return biases_; }
  const FeedbackFunction& feedback() const { return feedback_; }
  const ImpactFunction& impact() const { return impact_; }

  bool has_unique_best() const { return best_arm_ >= 0; }
  int best_arm() const;
  double best_mean() const { return means_(best_arm()); }
  double gap(int arm) const { return best_mean() - means_(arm); }
  double min_gap() const;   // over suboptimal arms
  double max_gap() const;   // over suboptimal arms
  double min_mean() const { return means_.minCoeff(); }

 private:
  BanditInstance(std::vector<ArmSpec> arms, FeedbackFunction feedback,
                 ImpactFunction impact, bool reject_tied_best);

  Eigen::VectorXd means_;
  Eigen::VectorXd biases_;
  FeedbackFunction feedback_;
  ImpactFunction impact_;
  int best_arm_ = -1;  // -1 when the top mean is tied
};

// Running counters of one trajectory.
struct EnvState {
  explicit EnvState(int num_arms)
      : pulls(ArrayXl::Zero(num_arms)), rewards(ArrayXl::Zero(num_arms)) {}

  long t = 0;
  ArrayXl pulls;    // per-arm pull counts
  ArrayXl rewards;  // per-arm accumulated reward
  long total_reward = 0;
  double total_payment = 0.0;
  long incentivized_steps = 0;

  int num_arms() const { return static_cast<int>(pulls.size()); }
};

struct StepOutcome {
  int pulled_arm = -1;
  int reward = 0;
  std::optional<int> incentivized_arm;
  double payment_charged = 0.0;
};

// Preference rate of each arm: F(S_a + theta_a) normalized over arms.
// Throws EvaluationError if any feedback value is non-finite.
Eigen::VectorXd preference_rates(const EnvState& state,
                                 const BanditInstance& instance);

// Tilts a rate vector toward the target: target -> (rate + g) / (1 + g),
// all others scaled by 1 / (1 + g). g must be nonnegative.
Eigen::VectorXd apply_incentive(const Eigen::VectorXd& rates, int target,
                                double g);

// Advances the environment by one step: computes (possibly incentivized)
// rates, samples the pulled arm and its Bernoulli reward, and updates every
// counter. Deterministic given (state, decision, stream state).
StepOutcome step(EnvState& state, const BanditInstance& instance,
                 const PolicyDecision& decision, RandomStream& rng);

// mu* . t - accumulated reward; may be negative on a lucky trajectory and is
// reported as-is (averaging across trials restores nonnegativity).
double pseudo_regret(const EnvState& state, const BanditInstance& instance);

}  // namespace urnbandit
