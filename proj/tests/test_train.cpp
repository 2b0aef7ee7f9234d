#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "costboost/csboost.hpp"
#include "costboost/data.hpp"
#include "costboost/train.hpp"

using namespace costboost;

namespace {

SynthData small_bayes(std::uint64_t seed, std::size_t per_class = 60, std::size_t angles = 4) {
  SynthSpec spec = SynthSpec::bayes_default(seed);
  spec.n_pos = spec.n_neg = per_class;
  spec.n_angles = angles;
  return gen_synth(spec);
}

TrainConfig make_cfg(CostPair cost, std::size_t rounds, Algo algo,
                     InitWeights init = InitWeights::uniform) {
  TrainConfig cfg;
  cfg.cost = cost;
  cfg.rounds = rounds;
  cfg.algo = algo;
  cfg.init = init;
  return cfg;
}

// Exponential bound recomputed from its definition over the partial
// ensembles: sum_i D1(i) * exp(-C_class * y_i * f_t(x_i)).
std::vector<double> direct_bound(const Dataset& ds, const RunRecord& rec,
                                 const std::vector<double>& d1, const CostPair& cost) {
  std::vector<double> out{1.0};
  std::vector<double> score(ds.size(), 0.0);
  for (const auto& mem : rec.ensemble.members) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      score[i] += mem.alpha * mem.stump.predict(ds.row(i));
      const double c = i < ds.pos_count() ? static_cast<double>(cost.c_pos)
                                          : static_cast<double>(cost.c_neg);
      sum += d1[i] * std::exp(-c * static_cast<double>(ds.label(i)) * score[i]);
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace

TEST_CASE("unit costs with uniform weights reproduce classic adaboost") {
  const SynthData data = small_bayes(201);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(16));
  const RunRecord db = db_train(data.dataset, pool, make_cfg(CostPair{1, 1}, 25, Algo::db));
  const RunRecord ada = adaboost_train(data.dataset, pool, 25);
  REQUIRE(db.per_round.size() == ada.per_round.size());
  for (std::size_t t = 0; t < db.per_round.size(); ++t) {
    CHECK(db.per_round[t].stump_index == ada.per_round[t].stump_index);
    CHECK(std::fabs(db.per_round[t].alpha - ada.per_round[t].alpha) <= 1e-9);
  }
}

TEST_CASE("conditional and exhaustive searches produce identical runs") {
  const SynthData data = small_bayes(203);
  for (const auto cost : {CostPair{1, 1}, CostPair{5, 2}, CostPair{1, 10}}) {
    const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(16));
    const RunRecord db = db_train(data.dataset, pool, make_cfg(cost, 20, Algo::db));
    const RunRecord dbn = db_train(data.dataset, pool, make_cfg(cost, 20, Algo::db_nocs));
    REQUIRE(db.per_round.size() == dbn.per_round.size());
    for (std::size_t t = 0; t < db.per_round.size(); ++t) {
      CHECK(db.per_round[t].stump_index == dbn.per_round[t].stump_index);
      CHECK(db.per_round[t].alpha == dbn.per_round[t].alpha);  // bitwise
    }
    CHECK(db.totals.roots_computed <= dbn.totals.roots_computed);
  }
}

TEST_CASE("cumulative counters match totals") {
  const SynthData data = small_bayes(207);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(8));
  const RunRecord rec = db_train(data.dataset, pool, make_cfg(CostPair{3, 1}, 15, Algo::db));
  REQUIRE(!rec.per_round.empty());
  CHECK(rec.per_round.back().roots_computed_cum == rec.totals.roots_computed);
  CHECK(rec.per_round.back().stumps_evaluated_cum == rec.totals.stumps_evaluated);
  for (std::size_t t = 1; t < rec.per_round.size(); ++t) {
    CHECK(rec.per_round[t].roots_computed_cum >= rec.per_round[t - 1].roots_computed_cum);
    CHECK(rec.per_round[t].stumps_evaluated_cum > rec.per_round[t - 1].stumps_evaluated_cum);
  }
}

TEST_CASE("bound trace: starts at one, decreases, matches the direct definition") {
  const SynthData data = small_bayes(211);
  const Dataset& ds = data.dataset;
  const StumpPool pool = build_stump_pool(ds, PoolSpec::quantile(16));
  for (const auto cost : {CostPair{1, 1}, CostPair{4, 1}, CostPair{1, 6}}) {
    const RunRecord rec = db_train(ds, pool, make_cfg(cost, 20, Algo::db));
    const std::vector<double> trace = bound_trace(rec);
    REQUIRE(trace.size() == rec.per_round.size() + 1);
    CHECK(trace[0] == 1.0);
    for (std::size_t t = 1; t < trace.size(); ++t) {
      CHECK(trace[t] > 0.0);
      CHECK(trace[t] < trace[t - 1]);
    }
    const std::vector<double> d1 = initial_distribution(ds, InitWeights::uniform);
    const std::vector<double> want = direct_bound(ds, rec, d1, cost);
    for (std::size_t t = 0; t < trace.size(); ++t)
      CHECK(std::fabs(trace[t] - want[t]) <= 1e-8 * want[t]);
  }
}

TEST_CASE("weighted training error never exceeds the bound") {
  const SynthData data = small_bayes(213);
  const Dataset& ds = data.dataset;
  const StumpPool pool = build_stump_pool(ds, PoolSpec::quantile(16));
  const RunRecord rec = db_train(ds, pool, make_cfg(CostPair{2, 1}, 20, Algo::db));
  const std::vector<double> trace = bound_trace(rec);
  const std::vector<double> d1 = initial_distribution(ds, InitWeights::uniform);

  std::vector<double> score(ds.size(), 0.0);
  for (std::size_t t = 0; t < rec.ensemble.members.size(); ++t) {
    const auto& mem = rec.ensemble.members[t];
    double err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      score[i] += mem.alpha * mem.stump.predict(ds.row(i));
      const int pred = score[i] >= 0.0 ? 1 : -1;
      if (pred != ds.label(i)) err += d1[i];
    }
    CHECK(err <= trace[t + 1] + 1e-12);
  }
}

TEST_CASE("early stop returns the partial ensemble") {
  // paired feature values: no stump ever passes the contribution condition
  const Dataset ds = Dataset::from_examples(1, {0, 1, 0, 1}, {1, 1, -1, -1});
  const StumpPool pool = build_stump_pool(ds, PoolSpec::all_midpoints());
  const RunRecord rec = db_train(ds, pool, make_cfg(CostPair{1, 1}, 5, Algo::db));
  CHECK(rec.ensemble.members.empty());
  CHECK(rec.totals.roots_computed == 0);
}

TEST_CASE("config and weight validation") {
  const SynthData data = small_bayes(217, 10);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(4));
  CHECK_THROWS_AS(db_train(data.dataset, pool, make_cfg(CostPair{1, 1}, 0, Algo::db)),
                  std::invalid_argument);
  CHECK_THROWS_AS(db_train(data.dataset, pool, make_cfg(CostPair{1, 1}, 5, Algo::adaboost)),
                  std::invalid_argument);

  std::vector<double> bad(data.dataset.size(), 1.0 / static_cast<double>(data.dataset.size()));
  bad[0] = -bad[0];
  CHECK_THROWS_AS(db_train(data.dataset, pool, make_cfg(CostPair{1, 1}, 5, Algo::db), &bad),
                  std::invalid_argument);
  std::vector<double> short_w(3, 1.0 / 3.0);
  CHECK_THROWS_AS(db_train(data.dataset, pool, make_cfg(CostPair{1, 1}, 5, Algo::db), &short_w),
                  std::invalid_argument);
  std::vector<double> unnormalized(data.dataset.size(), 1.0);
  CHECK_THROWS_AS(
      db_train(data.dataset, pool, make_cfg(CostPair{1, 1}, 5, Algo::db), &unnormalized),
      std::invalid_argument);
}

TEST_CASE("log-domain accumulators stay finite over long asymmetric runs") {
  const SynthData data = small_bayes(219, 12, 2);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::all_midpoints());
  const RunRecord rec =
      db_train(data.dataset, pool, make_cfg(CostPair{100, 1}, 2000, Algo::db));
  CHECK(!rec.per_round.empty());
  for (const auto& r : rec.per_round) {
    CHECK(std::isfinite(r.log_bound_pos));
    CHECK(std::isfinite(r.log_bound_neg));
    CHECK(std::isfinite(r.alpha));
    CHECK(r.alpha > 0.0);
  }
}

TEST_CASE("run record serialization round trips through json and csv") {
  const SynthData data = small_bayes(223, 20);
  const StumpPool pool = build_stump_pool(data.dataset, PoolSpec::quantile(6));
  const RunRecord rec = db_train(data.dataset, pool, make_cfg(CostPair{2, 1}, 5, Algo::db));

  const std::string json = run_record_to_json(rec);
  CHECK(json.find("\"algo\": \"db\"") != std::string::npos);
  CHECK(json.find("\"roots_computed\"") != std::string::npos);

  const std::string csv = run_record_to_csv(rec);
  CHECK(csv.rfind("round,stump_index,alpha", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == rec.per_round.size() + 1);  // header + one row per round
}

TEST_CASE("class-balanced initialization changes the class weights") {
  // unbalanced set: 3 positives, 9 negatives
  std::vector<double> feats;
  std::vector<int> labels;
  const SynthData data = small_bayes(227, 30, 2);
  for (std::size_t i = 0; i < data.dataset.size(); ++i) {
    if (data.dataset.label(i) == 1 && i >= 3) continue;  // keep 3 positives
    feats.insert(feats.end(), data.dataset.row(i).begin(), data.dataset.row(i).end());
    labels.push_back(data.dataset.label(i));
  }
  const Dataset ds = Dataset::from_examples(2, std::move(feats), std::move(labels));
  const std::vector<double> uniform = initial_distribution(ds, InitWeights::uniform);
  const std::vector<double> balanced = initial_distribution(ds, InitWeights::class_balanced);
  CHECK(std::accumulate(uniform.begin(), uniform.end(), 0.0) == doctest::Approx(1.0));
  CHECK(std::accumulate(balanced.begin(), balanced.end(), 0.0) == doctest::Approx(1.0));
  const double pos_mass =
      std::accumulate(balanced.begin(), balanced.begin() + ds.pos_count(), 0.0);
  CHECK(pos_mass == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(uniform[0] == doctest::Approx(1.0 / static_cast<double>(ds.size())));
}
