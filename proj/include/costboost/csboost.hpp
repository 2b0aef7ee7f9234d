// Reference trainers for the benchmark: classic discrete AdaBoost and
// Cost-Sensitive AdaBoost with its per-stump hyperbolic alpha solve. Both are
// instrumented with the same run records as the double-base trainer.
#pragma once

#include "costboost/core.hpp"
#include "costboost/train.hpp"
#include "costboost/weak.hpp"

namespace costboost {

// Per-stump round parameters of Cost-Sensitive AdaBoost over the joint
// distribution: class masses T_P, T_N and misclassified masses B (positives),
// D (negatives).
struct CsRoundParams {
  double t_pos = 0.0;
  double t_neg = 0.0;
  double b_err = 0.0;
  double d_err = 0.0;
};

// Classic discrete AdaBoost: per round the stump minimizing the joint
// weighted error, alpha = 0.5*ln((1-eps)/eps), multiplicative weight update,
// early stop when the best error reaches 1/2. Initial weights default to
// uniform 1/n.
RunRecord adaboost_train(const Dataset& ds, const StumpPool& pool, std::size_t rounds,
                         const std::vector<double>* initial_weights = nullptr);

// The unique alpha solving
//   2*C_P*B*cosh(C_P a) + 2*C_N*D*cosh(C_N a)
//     = C_P*T_P*exp(-C_P a) + C_N*T_N*exp(-C_N a)
// by bracketed search in alpha (the left-minus-right difference is increasing
// and changes sign once). Requires B < T_P or D < T_N. Under x = exp(alpha)
// this is the same equation as the double-base round polynomial.
double cs_alpha_solve(const CsRoundParams& p, const CostPair& cost);

// Cost-Sensitive AdaBoost: every round solves the hyperbolic equation for
// every pool stump (the exhaustive cost this algorithm pays, counted in
// roots_computed), selects the stump of largest alpha, applies the
// asymmetric weight update and renormalizes the joint distribution. Initial
// weights are class-balanced. The selected stump's loss equals the
// pre-normalization weight sum, so the bound logs carry it.
RunRecord cs_train(const Dataset& ds, const StumpPool& pool, const CostPair& cost,
                   std::size_t rounds);

// Dispatch on cfg.algo over a prebuilt pool.
RunRecord run_trainer(const Dataset& ds, const StumpPool& pool, const TrainConfig& cfg);

}  // namespace costboost
