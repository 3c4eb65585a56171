#include "urnbandit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace urnbandit {

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::kInitialization: return "initialization";
    case Phase::kExploration: return "exploration";
    case Phase::kExploitation: return "exploitation";
    case Phase::kSelfSustaining: return "self_sustaining";
  }
  return "unknown";
}

FeedbackFunction FeedbackFunction::polynomial(double coefficient, double alpha) {
  if (!(coefficient > 0.0)) {
    throw std::invalid_argument("feedback coefficient must be positive");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("feedback exponent must be positive");
  }
  FeedbackFunction f;
  f.polynomial_ = true;
  f.coefficient_ = coefficient;
  f.alpha_ = alpha;
  return f;
}

FeedbackFunction FeedbackFunction::user_supplied(
    std::function<double(double)> fn) {
  if (!fn) throw std::invalid_argument("feedback callable is empty");
  double prev = 0.0;
  for (int x = 1; x <= 1000; ++x) {
    const double v = fn(static_cast<double>(x));
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument(
          "feedback callable must be finite and positive on x = 1..1000");
    }
    if (v < prev) {
      throw std::invalid_argument(
          "feedback callable must be nondecreasing on x = 1..1000");
    }
    prev = v;
  }
  FeedbackFunction f;
  f.fn_ = std::move(fn);
  return f;
}

double FeedbackFunction::alpha() const {
  if (!polynomial_) {
    throw std::logic_error("alpha is only defined for polynomial feedback");
  }
  return alpha_;
}

double FeedbackFunction::coefficient() const {
  if (!polynomial_) {
    throw std::logic_error(
        "coefficient is only defined for polynomial feedback");
  }
  return coefficient_;
}

ImpactFunction ImpactFunction::constant(double g) {
  if (!(g >= 0.0)) throw std::invalid_argument("impact value must be >= 0");
  ImpactFunction f;
  f.kind_ = Kind::kConstant;
  f.value_ = g;
  return f;
}

ImpactFunction ImpactFunction::payment_linear() {
  ImpactFunction f;
  f.kind_ = Kind::kPaymentLinear;
  return f;
}

ImpactFunction ImpactFunction::user_supplied(
    std::function<double(double, long)> fn) {
  if (!fn) throw std::invalid_argument("impact callable is empty");
  const long step_grid[] = {1, 10, 100, 1000, 10000};
  for (long t : step_grid) {
    if (fn(0.0, t) != 0.0) {
      throw std::invalid_argument("impact callable must map payment 0 to 0");
    }
    double prev = 0.0;
    for (int i = 1; i <= 16; ++i) {
      const double b = 0.25 * i;
      const double v = fn(b, t);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("impact callable must be finite and >= 0");
      }
      if (v < prev) {
        throw std::invalid_argument(
            "impact callable must be nondecreasing in the payment");
      }
      prev = v;
    }
  }
  ImpactFunction f;
  f.kind_ = Kind::kUserSupplied;
  f.fn_ = std::move(fn);
  return f;
}

double ImpactFunction::operator()(double payment, long step) const {
  if (payment < 0.0) throw std::invalid_argument("payment must be >= 0");
  switch (kind_) {
    case Kind::kConstant: return payment > 0.0 ? value_ : 0.0;
    case Kind::kPaymentLinear: return payment;
    case Kind::kUserSupplied: return fn_(payment, step);
  }
  return 0.0;
}

double ImpactFunction::constant_value() const {
  if (kind_ != Kind::kConstant) {
    throw std::logic_error("constant_value is only defined for constant impact");
  }
  return value_;
}

BanditInstance::BanditInstance(std::vector<ArmSpec> arms,
                               FeedbackFunction feedback, ImpactFunction impact)
    : BanditInstance(std::move(arms), std::move(feedback), std::move(impact),
                     /*reject_tied_best=*/true) {}

BanditInstance BanditInstance::allow_tied_best(std::vector<ArmSpec> arms,
                                               FeedbackFunction feedback,
                                               ImpactFunction impact) {
  return BanditInstance(std::move(arms), std::move(feedback), std::move(impact),
                        /*reject_tied_best=*/false);
}

BanditInstance::BanditInstance(std::vector<ArmSpec> arms,
                               FeedbackFunction feedback, ImpactFunction impact,
                               bool reject_tied_best)
    : feedback_(std::move(feedback)), impact_(std::move(impact)) {
  const int m = static_cast<int>(arms.size());
  if (m < 2) throw std::invalid_argument("an instance needs at least two arms");
  means_.resize(m);
  biases_.resize(m);
  for (int a = 0; a < m; ++a) {
    if (!(arms[a].mean > 0.0) || arms[a].mean > 1.0) {
      throw std::invalid_argument("arm means must lie in (0, 1]");
    }
    if (!(arms[a].bias > 0.0)) {
      throw std::invalid_argument("arm biases must be positive");
    }
    means_(a) = arms[a].mean;
    biases_(a) = arms[a].bias;
  }
  int top_arm = 0;
  const double top = means_.maxCoeff(&top_arm);
  int ties = 0;
  for (int a = 0; a < m; ++a) {
    if (means_(a) == top) ++ties;
  }
  if (ties == 1) {
    best_arm_ = top_arm;
  } else if (reject_tied_best) {
    throw std::invalid_argument("the best arm must be unique");
  }
}

int BanditInstance::best_arm() const {
  if (best_arm_ < 0) {
    throw std::logic_error("this instance has a tied top mean; no best arm");
  }
  return best_arm_;
}

double BanditInstance::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (int a = 0; a < num_arms(); ++a) {
    if (a != best_arm_) g = std::min(g, gap(a));
  }
  return g;
}

double BanditInstance::max_gap() const {
  double g = 0.0;
  for (int a = 0; a < num_arms(); ++a) {
    if (a != best_arm_) g = std::max(g, gap(a));
  }
  return g;
}

Eigen::VectorXd preference_rates(const EnvState& state,
                                 const BanditInstance& instance) {
  const int m = instance.num_arms();
  if (state.num_arms() != m) {
    throw std::invalid_argument("state and instance arm counts differ");
  }
  Eigen::VectorXd weights(m);
  for (int a = 0; a < m; ++a) {
    const double w = instance.feedback()(
        static_cast<double>(state.rewards(a)) + instance.bias(a));
    if (!std::isfinite(w)) {
      throw EvaluationError(a, "feedback evaluation is not finite for arm " +
                                   std::to_string(a));
    }
    weights(a) = w;
  }
  const double total = weights.sum();
  if (!std::isfinite(total)) {
    int worst = 0;
    weights.maxCoeff(&worst);
    throw EvaluationError(worst, "feedback normalization overflowed");
  }
  return weights / total;
}

Eigen::VectorXd apply_incentive(const Eigen::VectorXd& rates, int target,
                                double g) {
  if (g < 0.0) throw std::invalid_argument("impact must be nonnegative");
  if (target < 0 || target >= rates.size()) {
    throw std::invalid_argument("incentivized arm index out of range");
  }
  Eigen::VectorXd out = rates / (1.0 + g);
  out(target) = (rates(target) + g) / (1.0 + g);
  return out;
}

StepOutcome step(EnvState& state, const BanditInstance& instance,
                 const PolicyDecision& decision, RandomStream& rng) {
  StepOutcome outcome;
  if (decision.forced_arm) {
    if (*decision.forced_arm < 0 || *decision.forced_arm >= instance.num_arms()) {
      throw std::invalid_argument("forced arm index out of range");
    }
    outcome.pulled_arm = *decision.forced_arm;
  } else {
    Eigen::VectorXd rates = preference_rates(state, instance);
    if (decision.incentivized_arm) {
      const double g = instance.impact()(decision.payment, state.t + 1);
      rates = apply_incentive(rates, *decision.incentivized_arm, g);
    }
    outcome.pulled_arm = rng.categorical(rates);
  }
  outcome.reward = rng.bernoulli(instance.mean(outcome.pulled_arm)) ? 1 : 0;
  outcome.incentivized_arm = decision.incentivized_arm;
  outcome.payment_charged = decision.incentivized_arm ? decision.payment : 0.0;

  state.t += 1;
  state.pulls(outcome.pulled_arm) += 1;
  state.rewards(outcome.pulled_arm) += outcome.reward;
  state.total_reward += outcome.reward;
  state.total_payment += outcome.payment_charged;
  if (decision.incentivized_arm) state.incentivized_steps += 1;
  return outcome;
}

double pseudo_regret(const EnvState& state, const BanditInstance& instance) {
  return instance.best_mean() * static_cast<double>(state.t) -
         static_cast<double>(state.total_reward);
}

}  // namespace urnbandit
