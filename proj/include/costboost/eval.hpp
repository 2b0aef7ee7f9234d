// Cost-space evaluation: confusion rates with PCF/NEC, per-classifier cost
// lines and their lower envelope, the closed-form Bayes rule for the Gaussian
// scenario, and stratified k-fold cross-validation.
#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "costboost/core.hpp"
#include "costboost/train.hpp"

namespace costboost {

// Confusion rates of a classifier on one evaluation set, plus the two
// cost-space summaries. nec = fn*pcf + fp*(1-pcf) with pcf built from the
// set's empirical class priors.
struct RatePoint {
  double fn_rate = 0.0;
  double fp_rate = 0.0;
  double ce = 0.0;
  double nec = 0.0;
};

// A classifier's line in cost space, through (0, FP) and (1, FN).
struct CostLine {
  double fp_at_0 = 0.0;
  double fn_at_1 = 0.0;
  double value_at(double pcf) const { return fn_at_1 * pcf + fp_at_0 * (1.0 - pcf); }
};

// Two isotropic Gaussian classes with shared variance and different means.
struct GaussianScenario {
  std::array<double, 2> mean_pos{1.0, 0.0};
  std::array<double, 2> mean_neg{-1.0, 0.0};
  double sigma = 1.0;
  double prior_pos = 0.5;
};

// Halfspace decision rule w.x >= tau on raw 2D points.
struct BayesRule {
  std::array<double, 2> w{0.0, 0.0};
  double tau = 0.0;
  int classify(const std::array<double, 2>& p) const {
    return w[0] * p[0] + w[1] * p[1] >= tau ? 1 : -1;
  }
};

// Probability cost function p(+)*C_P / (p(+)*C_P + p(-)*C_N).
double probability_cost(double prior_pos, const CostPair& cost);

RatePoint rates(const Ensemble& e, const Dataset& ds, const CostPair& cost);

// (FP, FN) of an ensemble on a test set, as a cost line.
CostLine cost_line(const Ensemble& e, const Dataset& ds);

// Pointwise minimum over the lines at grid+1 equally spaced PCF values.
std::vector<std::pair<double, double>> lower_envelope(const std::vector<CostLine>& lines,
                                                      std::size_t grid);

// Minimum-risk halfspace: classify +1 iff
//   C_P * p(+) * N(x; mu+, s^2 I) >= C_N * p(-) * N(x; mu-, s^2 I),
// i.e. w.x >= tau with w = (mu+ - mu-)/s^2 and
// tau = 0.5*w.(mu+ + mu-) + ln(C_N p(-) / (C_P p(+))).
BayesRule bayes_classifier(const GaussianScenario& sc, const CostPair& cost);

// Fold assignment for stratified k-fold splitting: each class is shuffled by
// seed and dealt round-robin, so per-class fold sizes differ by at most one.
// Entry i is the fold of example i (positives-first indexing).
std::vector<std::size_t> stratified_folds(std::size_t n_pos, std::size_t n_neg, std::size_t k,
                                          std::uint64_t seed);

// Stratified k-fold cross-validation: train on k-1 folds with cfg and average
// the held-out RatePoints.
RatePoint kfold_eval(const Dataset& ds, const TrainConfig& cfg, std::size_t k,
                     std::uint64_t seed);

}  // namespace costboost
