#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "costboost/csboost.hpp"
#include "costboost/data.hpp"
#include "costboost/dbsolve.hpp"
#include "oracles.hpp"

using namespace costboost;

namespace {

constexpr double kQuarticRoot = 1.3907555030867997;

Dataset one_feature(const std::vector<double>& values, const std::vector<int>& labels) {
  return Dataset::from_examples(1, values, labels);
}

SynthData small_bayes(std::uint64_t seed, std::size_t per_class = 60) {
  SynthSpec spec = SynthSpec::bayes_default(seed);
  spec.n_pos = spec.n_neg = per_class;
  spec.n_angles = 4;
  return gen_synth(spec);
}

}  // namespace

TEST_CASE("adaboost on separable data: one round, clamped error, large alpha") {
  const Dataset ds = one_feature({1, 2, 3, 4}, {1, 1, -1, -1});
  const StumpPool pool = build_stump_pool(ds, PoolSpec::all_midpoints());
  const RunRecord rec = adaboost_train(ds, pool, 1);
  REQUIRE(rec.ensemble.members.size() == 1);
  const double alpha = rec.ensemble.members[0].alpha;
  CHECK(alpha == doctest::Approx(0.5 * std::log((1.0 - kEpsMin) / kEpsMin)).epsilon(1e-9));
  CHECK(std::isfinite(alpha));
  // the selected stump separates the classes
  for (std::size_t i = 0; i < ds.size(); ++i)
    CHECK(rec.ensemble.members[0].stump.predict(ds.row(i)) == ds.label(i));
}

TEST_CASE("adaboost stops on exact coin-flip pools") {
  // paired feature values: every stump has weighted error exactly 1/2
  const Dataset ds = one_feature({0, 1, 0, 1}, {1, 1, -1, -1});
  const StumpPool pool = build_stump_pool(ds, PoolSpec::all_midpoints());
  const RunRecord rec = adaboost_train(ds, pool, 5);
  CHECK(rec.ensemble.members.empty());
  CHECK(rec.per_round.empty());
}

TEST_CASE("adaboost alpha for a quarter error") {
  // best achievable error on this XOR-ish set is 1/4
  const Dataset ds = one_feature({0, 3, 1, 2}, {1, 1, -1, -1});
  const StumpPool pool = build_stump_pool(ds, PoolSpec::all_midpoints());
  const RunRecord rec = adaboost_train(ds, pool, 1);
  REQUIRE(rec.ensemble.members.size() == 1);
  CHECK(rec.ensemble.members[0].alpha ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("adaboost rejects an empty pool and zero rounds") {
  const Dataset ds = one_feature({1, 2}, {1, -1});
  const StumpPool pool = build_stump_pool(ds, PoolSpec::all_midpoints());
  CHECK_THROWS_AS(adaboost_train(ds, pool, 0), std::invalid_argument);
  const StumpPool empty({}, ds.size(), 1, {});
  CHECK_THROWS_AS(adaboost_train(ds, empty, 3), std::invalid_argument);
}

TEST_CASE("cs_alpha_solve symmetric reduction") {
  const CsRoundParams p{0.5, 0.5, 0.1, 0.1};
  const double alpha = cs_alpha_solve(p, CostPair{1, 1});
  CHECK(alpha == doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-11));
}

TEST_CASE("cs_alpha_solve clamp behavior: perfect stump stays finite") {
  const double tp = 0.5, tn = 0.5;
  const CsRoundParams p{tp, tn, kEpsMin * tp, kEpsMin * tn};
  const double alpha = cs_alpha_solve(p, CostPair{1, 1});
  CHECK(std::isfinite(alpha));
  CHECK(alpha > 5.0);
  CHECK(alpha == doctest::Approx(0.5 * std::log((1.0 - kEpsMin) / kEpsMin)).epsilon(1e-9));
}

TEST_CASE("cs_alpha_solve matches the double-base quartic instance") {
  // T_P = T_N = 1/2, B = D = 1/8, C = [2,1]: same equation as the a=2/3
  // quartic under x = exp(alpha)
  const CsRoundParams p{0.5, 0.5, 0.125, 0.125};
  const double alpha = cs_alpha_solve(p, CostPair{2, 1});
  CHECK(alpha == doctest::Approx(std::log(kQuarticRoot)).epsilon(1e-9));
}

TEST_CASE("cs_alpha_solve requires some correct prediction") {
  CHECK_THROWS_AS(cs_alpha_solve({0.5, 0.5, 0.5, 0.5}, CostPair{1, 1}), std::logic_error);
}

TEST_CASE("cs_alpha_solve is invariant under joint weight rescaling") {
  std::mt19937_64 eng(61);
  for (int it = 0; it < 200; ++it) {
    const double tp = 0.1 + 0.8 * static_cast<double>(eng() % 1000) / 1000.0;
    const double tn = 1.0 - tp;
    const double b = tp * (0.05 + 0.4 * static_cast<double>(eng() % 1000) / 1000.0);
    const double d = tn * (0.05 + 0.4 * static_cast<double>(eng() % 1000) / 1000.0);
    const CostPair cost = CostPair::from_ratio(1 + eng() % 5, 1 + eng() % 5);
    const double scale = 1e-6 + static_cast<double>(eng() % 1000);
    const double a1 = cs_alpha_solve({tp, tn, b, d}, cost);
    const double a2 = cs_alpha_solve({scale * tp, scale * tn, scale * b, scale * d}, cost);
    CHECK(a1 == doctest::Approx(a2).epsilon(1e-10));
  }
}

TEST_CASE("hyperbolic and polynomial routes agree under x = exp(alpha)") {
  std::mt19937_64 eng(67);
  for (int it = 0; it < 400; ++it) {
    const double a = 0.05 + 0.9 * static_cast<double>(eng() % 10000) / 10000.0;
    const double ep = 0.01 + 0.7 * static_cast<double>(eng() % 1000) / 1000.0;
    const double en = 0.01 + 0.7 * static_cast<double>(eng() % 1000) / 1000.0;
    long long cp = 1 + static_cast<long long>(eng() % 9);
    long long cn = 1 + static_cast<long long>(eng() % 9);
    const long long g = std::gcd(cp, cn);
    cp /= g;
    cn /= g;
    const RoundStatics st{a, 1.0 - a, cp, cn};
    const ClassErrors e{ep, en};
    if (!contribution_condition(st, e)) continue;

    // T_P/T_N chosen so the cs statics match: C_P*T_P/(C_P*T_P+C_N*T_N) = a
    const double tp = a * static_cast<double>(cn) /
                      (a * static_cast<double>(cn) + (1.0 - a) * static_cast<double>(cp));
    const double tn = 1.0 - tp;
    const double alpha = cs_alpha_solve({tp, tn, tp * ep, tn * en}, CostPair{cp, cn});
    const double root = solve_round_root(st, e);
    CHECK(std::fabs(std::exp(alpha) - root) <= 1e-9 * std::max(1.0, root));
  }
}

TEST_CASE("cs with unit costs degenerates to adaboost") {
  const SynthData data = small_bayes(101);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(12));
  const std::vector<double> balanced =
      initial_distribution(data.dataset, InitWeights::class_balanced);

  const RunRecord cs = cs_train(data.dataset, pool, CostPair{1, 1}, 12);
  const RunRecord ada = adaboost_train(data.dataset, pool, 12, &balanced);

  REQUIRE(cs.ensemble.members.size() == ada.ensemble.members.size());
  for (std::size_t t = 0; t < cs.ensemble.members.size(); ++t) {
    CHECK(cs.per_round[t].stump_index == ada.per_round[t].stump_index);
    CHECK(std::fabs(cs.ensemble.members[t].alpha - ada.ensemble.members[t].alpha) <= 1e-9);
  }
}

TEST_CASE("cs and db agree in round one") {
  const SynthData data = small_bayes(103);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(12));
  for (const auto cost : {CostPair{1, 1}, CostPair{2, 1}, CostPair{1, 5}, CostPair{10, 1}}) {
    const RunRecord cs = cs_train(data.dataset, pool, cost, 1);
    TrainConfig cfg;
    cfg.cost = cost;
    cfg.rounds = 1;
    cfg.algo = Algo::db;
    cfg.init = InitWeights::class_balanced;
    const RunRecord db = db_train(data.dataset, pool, cfg);
    REQUIRE(cs.per_round.size() == 1);
    REQUIRE(db.per_round.size() == 1);
    CHECK(cs.per_round[0].stump_index == db.per_round[0].stump_index);
    CHECK(std::fabs(cs.per_round[0].alpha - db.per_round[0].alpha) <= 1e-6);
  }
}

TEST_CASE("cs pays one root per stump per round") {
  const SynthData data = small_bayes(107, 30);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(8));
  const std::size_t rounds = 10;
  const RunRecord rec = cs_train(data.dataset, pool, CostPair{2, 1}, rounds);
  REQUIRE(rec.per_round.size() == rounds);  // overlapping data, no early stop
  CHECK(rec.totals.roots_computed == pool.size() * rounds);
  CHECK(rec.per_round.back().roots_computed_cum == rec.totals.roots_computed);
}

TEST_CASE("cs stops when no stump attains positive alpha") {
  // paired feature values: every stump is an exact coin flip
  const Dataset ds = one_feature({0, 1, 0, 1}, {1, 1, -1, -1});
  const StumpPool pool = build_stump_pool(ds, PoolSpec::all_midpoints());
  const RunRecord rec = cs_train(ds, pool, CostPair{1, 1}, 5);
  CHECK(rec.ensemble.members.empty());
  CHECK(rec.totals.roots_computed == pool.size());  // one sweep, then stop
}

TEST_CASE("winner loss identity: the round loss equals the bound ratio") {
  // L = B(e^{C_P a}-e^{-C_P a}) + T_P e^{-C_P a} + D(e^{C_N a}-e^{-C_N a})
  //     + T_N e^{-C_N a}, which is exactly the pre-normalization weight sum
  // the bound logs record.
  const SynthData data = small_bayes(113);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(10));
  for (const auto cost : {CostPair{1, 1}, CostPair{3, 1}, CostPair{2, 5}}) {
    const RunRecord rec = cs_train(data.dataset, pool, cost, 8);
    const double cp = static_cast<double>(cost.c_pos);
    const double cn = static_cast<double>(cost.c_neg);
    double prev_bound = 1.0;
    for (const auto& r : rec.per_round) {
      // recover the round parameters from the log
      const double tp = r.a * cn / (cp * (1.0 - r.a) + r.a * cn);
      const double tn = 1.0 - tp;
      const double b_err = tp * r.eps_pos, d_err = tn * r.eps_neg;
      const double ep = std::exp(cp * r.alpha), em = std::exp(-cp * r.alpha);
      const double eq = std::exp(cn * r.alpha), en = std::exp(-cn * r.alpha);
      const double loss = b_err * (ep - em) + tp * em + d_err * (eq - en) + tn * en;

      const double bound = std::exp(r.log_bound_pos) + std::exp(r.log_bound_neg);
      const double z = bound / prev_bound;
      prev_bound = bound;
      CHECK(loss == doctest::Approx(z).epsilon(1e-9));
    }
  }
}

TEST_CASE("adaboost bound is non-increasing and dominates the training error") {
  const SynthData data = small_bayes(109);
  const Dataset& ds = data.dataset;
  const StumpPool pool = build_stump_pool(ds, PoolSpec::quantile(10));
  const RunRecord rec = adaboost_train(ds, pool, 15);
  const std::vector<double> bound = bound_trace(rec);
  REQUIRE(bound.size() == rec.per_round.size() + 1);
  CHECK(bound[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t t = 1; t < bound.size(); ++t) CHECK(bound[t] < bound[t - 1]);

  // 0/1 training error of each partial ensemble, uniform initial weights
  std::vector<double> score(ds.size(), 0.0);
  for (std::size_t t = 0; t < rec.ensemble.members.size(); ++t) {
    const auto& mem = rec.ensemble.members[t];
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      score[i] += mem.alpha * mem.stump.predict(ds.row(i));
      const int pred = score[i] >= 0.0 ? 1 : -1;
      if (pred != ds.label(i)) err += 1.0 / static_cast<double>(ds.size());
    }
    CHECK(err <= bound[t + 1] + 1e-12);
  }
}
