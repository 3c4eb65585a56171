#pragma once

#include <optional>

#include "urnbandit/dynamics.hpp"

namespace urnbandit {

// Inputs to the closed-form regret/payment upper-bound evaluators. The
// impact is a constant G and must exceed 1 (time-varying impact functions
// are not accepted here); the horizon is real-valued so the evaluators can
// be sampled on arbitrary grids. q is required by the explore-then-commit
// evaluators and by the phase-length bounds.
struct BoundInputs {
  BoundInputs(BanditInstance instance, double horizon, double payment,
              double impact, std::optional<double> q = std::nullopt);

  BanditInstance instance;
  double horizon;
  double payment;
  double impact;
  std::optional<double> q;

  long reward_threshold() const;  // n = ceil(q ln T)
};

// Share of the preference weight retained by one arm at the end of
// exploration against the largest attainable total at the horizon:
// F(n + theta_a) / sum_i F(mu* T + theta_i) with n = ceil(q ln T).
double feedback_share(const BoundInputs& inputs, int arm);

struct Thm1Regret {
  double value;
  // whether q >= 2 max_{a != a*} mu_a / min_gap^2; the bound is evaluated
  // either way, but identification is not guaranteed when this fails.
  bool q_condition_met;
};

// Explore-then-commit regret bound, main term only (the vanishing residual
// is deliberately dropped):
//   sum_a 2 (G - L*) max_gap / ((G - 1) mu_a) * q ln T.
Thm1Regret thm1_regret_main(const BoundInputs& inputs);

// Same expression with the feedback share pinned to a given value.
double thm1_regret_main_term(const BoundInputs& inputs, double share_best);

// Explore-then-commit payment bound:
//   sum_{a != a*} 2 b (G + 1) / (mu_a (G - 1)) * q ln T.
double thm1_payment(const BoundInputs& inputs);

// UCB-List regret bound:
//   sum_{a != a*} [ (8 gap_a (G-1) + 8 max_gap) / ((G-1) gap_a^2) ln T
//                   + 4 gap_a + 4 max_gap / (G-1) ].
double thm2_regret(const BoundInputs& inputs);

// UCB-List payment bound:
//   (2G+1)/(G-1) [ 8 b ln T / min_gap^2
//                  + sum_{a != a*} (8 b ln T / gap_a^2 + 4 b) ].
double thm2_payment(const BoundInputs& inputs);

struct TauBounds {
  double tau_n_bound;    // n * sum_i (1 + G) / (G mu_i)
  double tau_gap_bound;  // (tau_n_bound - 2n / mu*) (G + 1) / (G - 1)
};

// Upper bounds on the expected exploration length and on the additional
// steps needed to reach dominance.
TauBounds tau_bounds(const BoundInputs& inputs);

}  // namespace urnbandit
