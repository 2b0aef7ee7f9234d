#include "costboost/train.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "costboost/dbsolve.hpp"

namespace costboost {

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::adaboost: return "adaboost";
    case Algo::cs: return "cs";
    case Algo::db: return "db";
    case Algo::db_nocs: return "db_nocs";
  }
  return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "adaboost") return Algo::adaboost;
  if (name == "cs") return Algo::cs;
  if (name == "db") return Algo::db;
  if (name == "db_nocs") return Algo::db_nocs;
  return std::nullopt;
}

std::vector<double> initial_distribution(const Dataset& ds, InitWeights init) {
  const std::size_t n = ds.size(), m = ds.pos_count();
  std::vector<double> d(n);
  if (init == InitWeights::uniform) {
    std::fill(d.begin(), d.end(), 1.0 / static_cast<double>(n));
  } else {
    const double wp = 0.5 / static_cast<double>(m);
    const double wn = 0.5 / static_cast<double>(n - m);
    for (std::size_t i = 0; i < n; ++i) d[i] = i < m ? wp : wn;
  }
  return d;
}

namespace {

std::uint64_t now_nanos() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

void check_initial_weights(const std::vector<double>& d, std::size_t n) {
  if (d.size() != n)
    throw std::invalid_argument("initial weights: length must equal dataset size");
  double sum = 0.0;
  for (double v : d) {
    if (!(v > 0.0)) throw std::invalid_argument("initial weights: entries must be positive");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("initial weights: must sum to 1");
}

}  // namespace

RunRecord db_train(const Dataset& ds, const StumpPool& pool, const TrainConfig& cfg,
                   const std::vector<double>* initial_weights) {
  if (cfg.algo != Algo::db && cfg.algo != Algo::db_nocs)
    throw std::invalid_argument("db_train: algo must be db or db_nocs");
  if (cfg.rounds < 1) throw std::invalid_argument("db_train: rounds must be >= 1");
  if (pool.size() == 0) throw std::invalid_argument("db_train: empty stump pool");
  if (pool.n_examples() != ds.size())
    throw std::invalid_argument("db_train: pool built for a different dataset");

  const std::size_t n = ds.size(), m = ds.pos_count();
  std::vector<double> d1 =
      initial_weights ? *initial_weights : initial_distribution(ds, cfg.init);
  check_initial_weights(d1, n);

  WeightState w;
  w.w_pos = std::accumulate(d1.begin(), d1.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
  w.w_neg = 1.0 - w.w_pos;
  w.d_pos.resize(m);
  w.d_neg.resize(n - m);
  for (std::size_t i = 0; i < m; ++i) w.d_pos[i] = d1[i] / w.w_pos;
  for (std::size_t i = m; i < n; ++i) w.d_neg[i - m] = d1[i] / w.w_neg;
  // Class weights folded into the accumulators: they only ever appear as the
  // products W_P*A_P and W_N*A_N.
  w.log_acc_pos = std::log(w.w_pos);
  w.log_acc_neg = std::log(w.w_neg);

  const double cp = static_cast<double>(cfg.cost.c_pos);
  const double cn = static_cast<double>(cfg.cost.c_neg);

  RunRecord rec;
  rec.algo = cfg.algo;
  rec.ensemble.cost = cfg.cost;
  SearchCounters counters;
  const std::uint64_t t0 = now_nanos();

  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    // Fold the pre-normalization sums (the previous round's Z values) into
    // the accumulators, then renormalize the subdistributions.
    const double sp = std::accumulate(w.d_pos.begin(), w.d_pos.end(), 0.0);
    const double sn = std::accumulate(w.d_neg.begin(), w.d_neg.end(), 0.0);
    w.log_acc_pos += std::log(sp);
    w.log_acc_neg += std::log(sn);
    for (double& v : w.d_pos) v /= sp;
    for (double& v : w.d_neg) v /= sn;

    const double lp = std::log(cp) + w.log_acc_pos;
    const double ln_ = std::log(cn) + w.log_acc_neg;
    const double a = 1.0 / (1.0 + std::exp(ln_ - lp));
    const RoundStatics st{a, 1.0 - a, cfg.cost.c_pos, cfg.cost.c_neg};

    const auto choice = cfg.algo == Algo::db
                            ? conditional_search(st, pool, w, counters)
                            : exhaustive_search(st, pool, w, counters);
    if (!choice) break;  // nothing contributes: keep the partial ensemble

    const std::size_t f = choice->stump_index;
    rec.ensemble.members.push_back({pool.stump(f), choice->alpha});

    // Class-base weight update: beta^{-alpha*y*h} is exp(-C*alpha) on correct
    // examples and exp(+C*alpha) on mistakes, for both classes.
    const double up_ok = std::exp(-cp * choice->alpha), up_bad = std::exp(cp * choice->alpha);
    const double un_ok = std::exp(-cn * choice->alpha), un_bad = std::exp(cn * choice->alpha);
    for (std::size_t i = 0; i < m; ++i) w.d_pos[i] *= pool.correct(f, i) ? up_ok : up_bad;
    for (std::size_t i = m; i < n; ++i) w.d_neg[i - m] *= pool.correct(f, i) ? un_ok : un_bad;

    // Bound share after this round: the unnormalized sums are Z_{P,t}, Z_{N,t}.
    const double zp = std::accumulate(w.d_pos.begin(), w.d_pos.end(), 0.0);
    const double zn = std::accumulate(w.d_neg.begin(), w.d_neg.end(), 0.0);

    RoundLog log;
    log.round = t;
    log.stump_index = f;
    log.alpha = choice->alpha;
    log.eps_pos = choice->errors.eps_pos;
    log.eps_neg = choice->errors.eps_neg;
    log.a = a;
    log.b = 1.0 - a;
    log.roots_computed_cum = counters.roots_computed;
    log.stumps_evaluated_cum = counters.stumps_evaluated;
    log.wall_nanos_cum = now_nanos() - t0;
    log.log_bound_pos = w.log_acc_pos + std::log(zp);
    log.log_bound_neg = w.log_acc_neg + std::log(zn);
    rec.per_round.push_back(log);
  }

  rec.totals.roots_computed = counters.roots_computed;
  rec.totals.stumps_evaluated = counters.stumps_evaluated;
  rec.totals.wall_nanos = now_nanos() - t0;
  return rec;
}

RunRecord db_train(const Dataset& ds, const TrainConfig& cfg,
                   const std::vector<double>* initial_weights) {
  const StumpPool pool = build_stump_pool(ds, cfg.pool_spec);
  return db_train(ds, pool, cfg, initial_weights);
}

std::vector<double> bound_trace(const RunRecord& rec) {
  std::vector<double> trace;
  trace.reserve(rec.per_round.size() + 1);
  trace.push_back(1.0);
  for (const auto& r : rec.per_round)
    trace.push_back(std::exp(r.log_bound_pos) + std::exp(r.log_bound_neg));
  return trace;
}

std::string run_record_to_json(const RunRecord& rec) {
  nlohmann::ordered_json j;
  j["algo"] = algo_name(rec.algo);
  j["cost"] = {rec.ensemble.cost.c_pos, rec.ensemble.cost.c_neg};
  j["totals"] = {{"roots_computed", rec.totals.roots_computed},
                 {"stumps_evaluated", rec.totals.stumps_evaluated},
                 {"wall_nanos", rec.totals.wall_nanos}};
  auto& rounds = j["per_round"] = nlohmann::ordered_json::array();
  for (const auto& r : rec.per_round) {
    nlohmann::ordered_json jr;
    jr["round"] = r.round;
    jr["stump_index"] = r.stump_index;
    jr["alpha"] = r.alpha;
    jr["eps_pos"] = r.eps_pos;
    jr["eps_neg"] = r.eps_neg;
    jr["a"] = r.a;
    jr["b"] = r.b;
    jr["roots_computed_cum"] = r.roots_computed_cum;
    jr["stumps_evaluated_cum"] = r.stumps_evaluated_cum;
    jr["wall_nanos_cum"] = r.wall_nanos_cum;
    jr["log_bound_pos"] = r.log_bound_pos;
    jr["log_bound_neg"] = r.log_bound_neg;
    rounds.push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

std::string run_record_to_csv(const RunRecord& rec) {
  std::string out =
      "round,stump_index,alpha,eps_pos,eps_neg,a,b,roots_computed_cum,"
      "stumps_evaluated_cum,wall_nanos_cum,log_bound_pos,log_bound_neg\n";
  char buf[512];
  for (const auto& r : rec.per_round) {
    std::snprintf(buf, sizeof(buf),
                  "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%llu,%llu,%llu,%.17g,%.17g\n",
                  r.round, r.stump_index, r.alpha, r.eps_pos, r.eps_neg, r.a, r.b,
                  static_cast<unsigned long long>(r.roots_computed_cum),
                  static_cast<unsigned long long>(r.stumps_evaluated_cum),
                  static_cast<unsigned long long>(r.wall_nanos_cum), r.log_bound_pos,
                  r.log_bound_neg);
    out += buf;
  }
  return out;
}

void save_run_record(const RunRecord& rec, const std::string& json_path,
                     const std::string& csv_path) {
  std::ofstream j(json_path, std::ios::binary);
  if (!j) throw std::runtime_error("cannot open for writing: " + json_path);
  j << run_record_to_json(rec);
  std::ofstream c(csv_path, std::ios::binary);
  if (!c) throw std::runtime_error("cannot open for writing: " + csv_path);
  c << run_record_to_csv(rec);
}

}  // namespace costboost
