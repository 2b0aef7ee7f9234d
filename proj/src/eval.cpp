#include "costboost/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "costboost/csboost.hpp"
#include "costboost/rng.hpp"

namespace costboost {

double probability_cost(double prior_pos, const CostPair& cost) {
  const double cp = static_cast<double>(cost.c_pos);
  const double cn = static_cast<double>(cost.c_neg);
  return prior_pos * cp / (prior_pos * cp + (1.0 - prior_pos) * cn);
}

namespace {

// (fn, fp) of an ensemble on a positives-first dataset.
std::pair<double, double> confusion(const Ensemble& e, const Dataset& ds) {
  if (ds.pos_count() == 0 || ds.neg_count() == 0)
    throw std::invalid_argument("rates: evaluation set must contain both classes");
  std::size_t misses = 0, alarms = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const int pred = ensemble_classify(e, ds.row(i));
    if (ds.label(i) == 1 && pred == -1) ++misses;
    if (ds.label(i) == -1 && pred == 1) ++alarms;
  }
  return {static_cast<double>(misses) / static_cast<double>(ds.pos_count()),
          static_cast<double>(alarms) / static_cast<double>(ds.neg_count())};
}

}  // namespace

RatePoint rates(const Ensemble& e, const Dataset& ds, const CostPair& cost) {
  const auto [fn, fp] = confusion(e, ds);
  const double n = static_cast<double>(ds.size());
  const double prior_pos = static_cast<double>(ds.pos_count()) / n;
  const double pcf = probability_cost(prior_pos, cost);
  RatePoint r;
  r.fn_rate = fn;
  r.fp_rate = fp;
  r.ce = (fn * static_cast<double>(ds.pos_count()) + fp * static_cast<double>(ds.neg_count())) / n;
  r.nec = fn * pcf + fp * (1.0 - pcf);
  return r;
}

CostLine cost_line(const Ensemble& e, const Dataset& ds) {
  const auto [fn, fp] = confusion(e, ds);
  return CostLine{fp, fn};
}

std::vector<std::pair<double, double>> lower_envelope(const std::vector<CostLine>& lines,
                                                      std::size_t grid) {
  if (lines.empty()) throw std::invalid_argument("lower_envelope: no lines given");
  if (grid < 2) throw std::invalid_argument("lower_envelope: grid must be >= 2");
  std::vector<std::pair<double, double>> env;
  env.reserve(grid + 1);
  for (std::size_t g = 0; g <= grid; ++g) {
    const double p = static_cast<double>(g) / static_cast<double>(grid);
    double best = lines.front().value_at(p);
    for (std::size_t i = 1; i < lines.size(); ++i)
      best = std::min(best, lines[i].value_at(p));
    env.emplace_back(p, best);
  }
  return env;
}

BayesRule bayes_classifier(const GaussianScenario& sc, const CostPair& cost) {
  if (!(sc.sigma > 0.0)) throw std::invalid_argument("bayes_classifier: sigma must be positive");
  if (!(sc.prior_pos > 0.0) || !(sc.prior_pos < 1.0))
    throw std::invalid_argument("bayes_classifier: prior must lie in (0,1)");
  const double s2 = sc.sigma * sc.sigma;
  BayesRule rule;
  rule.w = {(sc.mean_pos[0] - sc.mean_neg[0]) / s2, (sc.mean_pos[1] - sc.mean_neg[1]) / s2};
  const double mid_dot =
      0.5 * (rule.w[0] * (sc.mean_pos[0] + sc.mean_neg[0]) +
             rule.w[1] * (sc.mean_pos[1] + sc.mean_neg[1]));
  rule.tau = mid_dot + std::log(static_cast<double>(cost.c_neg) * (1.0 - sc.prior_pos) /
                                (static_cast<double>(cost.c_pos) * sc.prior_pos));
  return rule;
}

std::vector<std::size_t> stratified_folds(std::size_t n_pos, std::size_t n_neg, std::size_t k,
                                          std::uint64_t seed) {
  auto eng = substream(seed, RngPurpose::cv_shuffle);
  std::vector<std::size_t> pos(n_pos), neg(n_neg);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::iota(neg.begin(), neg.end(), n_pos);
  for (std::size_t i = pos.size(); i > 1; --i)
    std::swap(pos[i - 1], pos[eng() % i]);
  for (std::size_t i = neg.size(); i > 1; --i)
    std::swap(neg[i - 1], neg[eng() % i]);

  std::vector<std::size_t> fold_of(n_pos + n_neg);
  for (std::size_t j = 0; j < pos.size(); ++j) fold_of[pos[j]] = j % k;
  for (std::size_t j = 0; j < neg.size(); ++j) fold_of[neg[j]] = j % k;
  return fold_of;
}

RatePoint kfold_eval(const Dataset& ds, const TrainConfig& cfg, std::size_t k,
                     std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_eval: k must be >= 2");
  const std::size_t n = ds.size(), m = ds.pos_count();
  if (m < k || ds.neg_count() < k)
    throw std::invalid_argument("kfold_eval: every fold needs both classes");

  const std::vector<std::size_t> fold_of = stratified_folds(m, n - m, k, seed);

  RatePoint sum;
  for (std::size_t fold = 0; fold < k; ++fold) {
    std::vector<double> train_feats, test_feats;
    std::vector<int> train_labels, test_labels;
    for (std::size_t i = 0; i < n; ++i) {
      auto& feats = fold_of[i] == fold ? test_feats : train_feats;
      auto& labels = fold_of[i] == fold ? test_labels : train_labels;
      const auto row = ds.row(i);
      feats.insert(feats.end(), row.begin(), row.end());
      labels.push_back(ds.label(i));
    }
    const Dataset train_ds = Dataset::from_examples(ds.dim(), std::move(train_feats),
                                                    std::move(train_labels));
    const Dataset test_ds = Dataset::from_examples(ds.dim(), std::move(test_feats),
                                                   std::move(test_labels));
    const StumpPool pool = build_stump_pool(train_ds, cfg.pool_spec);
    const RunRecord rec = run_trainer(train_ds, pool, cfg);
    const RatePoint r = rates(rec.ensemble, test_ds, cfg.cost);
    sum.fn_rate += r.fn_rate;
    sum.fp_rate += r.fp_rate;
    sum.ce += r.ce;
    sum.nec += r.nec;
  }
  const double kk = static_cast<double>(k);
  return RatePoint{sum.fn_rate / kk, sum.fp_rate / kk, sum.ce / kk, sum.nec / kk};
}

}  // namespace costboost
