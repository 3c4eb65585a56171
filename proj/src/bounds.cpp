#include "urnbandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace urnbandit {
namespace {

double require_q(const BoundInputs& inputs) {
  if (!inputs.q) {
    throw std::invalid_argument("this bound requires the parameter q");
  }
  return *inputs.q;
}

}  // namespace

BoundInputs::BoundInputs(BanditInstance instance_in, double horizon_in,
                         double payment_in, double impact_in,
                         std::optional<double> q_in)
    : instance(std::move(instance_in)),
      horizon(horizon_in),
      payment(payment_in),
      impact(impact_in),
      q(q_in) {
  if (!(impact > 1.0)) {
    throw std::domain_error("the bounds require a constant impact G > 1");
  }
  if (!(horizon >= 2.0)) throw std::invalid_argument("horizon must be >= 2");
  if (!(payment > 0.0)) throw std::invalid_argument("payment must be positive");
  if (q && !(*q > 0.0)) throw std::invalid_argument("q must be positive");
}

long BoundInputs::reward_threshold() const {
  const double q_value = require_q(*this);
  return static_cast<long>(std::ceil(q_value * std::log(horizon)));
}

double feedback_share(const BoundInputs& inputs, int arm) {
  const auto& instance = inputs.instance;
  const double n = static_cast<double>(inputs.reward_threshold());
  double denominator = 0.0;
  for (int i = 0; i < instance.num_arms(); ++i) {
    denominator += instance.feedback()(instance.best_mean() * inputs.horizon +
                                       instance.bias(i));
  }
  return instance.feedback()(n + instance.bias(arm)) / denominator;
}

double thm1_regret_main_term(const BoundInputs& inputs, double share_best) {
  const auto& instance = inputs.instance;
  const double q_value = require_q(inputs);
  const double g = inputs.impact;
  const double log_t = std::log(inputs.horizon);
  double total = 0.0;
  for (int a = 0; a < instance.num_arms(); ++a) {
    total += 2.0 * (g - share_best) * instance.max_gap() /
             ((g - 1.0) * instance.mean(a));
  }
  return total * q_value * log_t;
}

Thm1Regret thm1_regret_main(const BoundInputs& inputs) {
  const auto& instance = inputs.instance;
  const double q_value = require_q(inputs);
  double max_suboptimal_mean = 0.0;
  for (int a = 0; a < instance.num_arms(); ++a) {
    if (a != instance.best_arm()) {
      max_suboptimal_mean = std::max(max_suboptimal_mean, instance.mean(a));
    }
  }
  const double needed =
      2.0 * max_suboptimal_mean / (instance.min_gap() * instance.min_gap());
  const double share = feedback_share(inputs, instance.best_arm());
  return Thm1Regret{thm1_regret_main_term(inputs, share), q_value >= needed};
}

double thm1_payment(const BoundInputs& inputs) {
  const auto& instance = inputs.instance;
  const double q_value = require_q(inputs);
  const double g = inputs.impact;
  const double log_t = std::log(inputs.horizon);
  double total = 0.0;
  for (int a = 0; a < instance.num_arms(); ++a) {
    if (a == instance.best_arm()) continue;
    total += 2.0 * inputs.payment * (g + 1.0) / (instance.mean(a) * (g - 1.0));
  }
  return total * q_value * log_t;
}

double thm2_regret(const BoundInputs& inputs) {
  const auto& instance = inputs.instance;
  const double g = inputs.impact;
  const double log_t = std::log(inputs.horizon);
  const double max_gap = instance.max_gap();
  double total = 0.0;
  for (int a = 0; a < instance.num_arms(); ++a) {
    if (a == instance.best_arm()) continue;
    const double gap = instance.gap(a);
    total += (8.0 * gap * (g - 1.0) + 8.0 * max_gap) /
                 ((g - 1.0) * gap * gap) * log_t +
             4.0 * gap + 4.0 * max_gap / (g - 1.0);
  }
  return total;
}

double thm2_payment(const BoundInputs& inputs) {
  const auto& instance = inputs.instance;
  const double g = inputs.impact;
  const double b = inputs.payment;
  const double log_t = std::log(inputs.horizon);
  const double min_gap = instance.min_gap();
  double inner = 8.0 * b * log_t / (min_gap * min_gap);
  for (int a = 0; a < instance.num_arms(); ++a) {
    if (a == instance.best_arm()) continue;
    const double gap = instance.gap(a);
    inner += 8.0 * b * log_t / (gap * gap) + 4.0 * b;
  }
  return (2.0 * g + 1.0) / (g - 1.0) * inner;
}

TauBounds tau_bounds(const BoundInputs& inputs) {
  const auto& instance = inputs.instance;
  const double g = inputs.impact;
  const double n = static_cast<double>(inputs.reward_threshold());
  double per_arm = 0.0;
  for (int a = 0; a < instance.num_arms(); ++a) {
    per_arm += (1.0 + g) / (g * instance.mean(a));
  }
  const double tau_n = n * per_arm;
  const double tau_gap =
      (tau_n - 2.0 * n / instance.best_mean()) * (g + 1.0) / (g - 1.0);
  return TauBounds{tau_n, tau_gap};
}

}  // namespace urnbandit
