#include "costboost/csboost.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "costboost/brent.hpp"
#include "costboost/dbsolve.hpp"

namespace costboost {

namespace {

std::uint64_t now_nanos() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

double mass(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

RunRecord adaboost_train(const Dataset& ds, const StumpPool& pool, std::size_t rounds,
                         const std::vector<double>* initial_weights) {
  if (rounds < 1) throw std::invalid_argument("adaboost_train: rounds must be >= 1");
  if (pool.size() == 0) throw std::invalid_argument("adaboost_train: empty stump pool");
  if (pool.n_examples() != ds.size())
    throw std::invalid_argument("adaboost_train: pool built for a different dataset");

  const std::size_t n = ds.size(), m = ds.pos_count();
  std::vector<double> d =
      initial_weights ? *initial_weights : initial_distribution(ds, InitWeights::uniform);
  if (d.size() != n)
    throw std::invalid_argument("adaboost_train: initial weights length must equal dataset size");
  // log_z accumulates the pre-normalization sums; each class's bound share is
  // log_z + ln(class mass of the normalized weights).
  double log_z = 0.0;

  RunRecord rec;
  rec.algo = Algo::adaboost;
  rec.ensemble.cost = CostPair{1, 1};
  const std::uint64_t t0 = now_nanos();

  for (std::size_t t = 1; t <= rounds; ++t) {
    std::size_t best = 0;
    double best_eps = weighted_error(pool, 0, d);
    for (std::size_t f = 1; f < pool.size(); ++f) {
      const double eps = weighted_error(pool, f, d);
      if (eps < best_eps) {
        best_eps = eps;
        best = f;
      }
    }
    rec.totals.stumps_evaluated += pool.size();
    if (best_eps >= 0.5) break;  // no edge left

    // Class-conditional errors of the winner, for the record.
    double pos_mass = 0.0, pos_err = 0.0, neg_err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      pos_mass += d[i];
      if (!pool.correct(best, i)) pos_err += d[i];
    }
    for (std::size_t i = m; i < n; ++i)
      if (!pool.correct(best, i)) neg_err += d[i];
    const double neg_mass = 1.0 - pos_mass;

    const double eps = std::clamp(best_eps, kEpsMin, 1.0 - kEpsMin);
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    rec.ensemble.members.push_back({pool.stump(best), alpha});

    const double up = std::exp(alpha), down = std::exp(-alpha);
    for (std::size_t i = 0; i < n; ++i) d[i] *= pool.correct(best, i) ? down : up;
    const double z = mass(d);
    log_z += std::log(z);
    for (double& v : d) v /= z;

    RoundLog log;
    log.round = t;
    log.stump_index = best;
    log.alpha = alpha;
    log.eps_pos = std::clamp(pos_err / pos_mass, kEpsMin, 1.0 - kEpsMin);
    log.eps_neg = std::clamp(neg_err / neg_mass, kEpsMin, 1.0 - kEpsMin);
    log.a = pos_mass;
    log.b = neg_mass;
    log.roots_computed_cum = rec.totals.roots_computed;
    log.stumps_evaluated_cum = rec.totals.stumps_evaluated;
    log.wall_nanos_cum = now_nanos() - t0;
    log.log_bound_pos = log_z + std::log(mass({d.data(), m}));
    log.log_bound_neg = log_z + std::log(mass({d.data() + m, n - m}));
    rec.per_round.push_back(log);
  }
  rec.totals.wall_nanos = now_nanos() - t0;
  return rec;
}

double cs_alpha_solve(const CsRoundParams& p, const CostPair& cost) {
  if (!(p.b_err < p.t_pos) && !(p.d_err < p.t_neg))
    throw std::logic_error("cs_alpha_solve: no correct prediction on either class");
  const double cp = static_cast<double>(cost.c_pos);
  const double cn = static_cast<double>(cost.c_neg);
  const auto g = [&](double a) {
    return 2.0 * cp * p.b_err * std::cosh(cp * a) + 2.0 * cn * p.d_err * std::cosh(cn * a) -
           cp * p.t_pos * std::exp(-cp * a) - cn * p.t_neg * std::exp(-cn * a);
  };

  const double g0 = g(0.0);
  if (g0 == 0.0) return 0.0;
  double lo, hi, flo, fhi;
  if (g0 > 0.0) {
    hi = 0.0;
    fhi = g0;
    lo = -1.0;
    flo = g(lo);
    int doublings = 0;
    while (!(flo < 0.0)) {
      if (++doublings > 64)
        throw std::runtime_error("cs_alpha_solve: no sign change after 64 doublings");
      hi = lo;
      fhi = flo;
      lo *= 2.0;
      flo = g(lo);
    }
  } else {
    lo = 0.0;
    flo = g0;
    hi = 1.0;
    fhi = g(hi);
    int doublings = 0;
    while (!(fhi > 0.0)) {
      if (++doublings > 64)
        throw std::runtime_error("cs_alpha_solve: no sign change after 64 doublings");
      lo = hi;
      flo = fhi;
      hi *= 2.0;
      fhi = g(hi);
    }
  }
  return brent_root(g, lo, hi, flo, fhi, 1e-12);
}

RunRecord cs_train(const Dataset& ds, const StumpPool& pool, const CostPair& cost,
                   std::size_t rounds) {
  if (rounds < 1) throw std::invalid_argument("cs_train: rounds must be >= 1");
  if (pool.size() == 0) throw std::invalid_argument("cs_train: empty stump pool");
  if (pool.n_examples() != ds.size())
    throw std::invalid_argument("cs_train: pool built for a different dataset");

  const std::size_t n = ds.size(), m = ds.pos_count();
  std::vector<double> d = initial_distribution(ds, InitWeights::class_balanced);
  double log_z = 0.0;

  const double cp = static_cast<double>(cost.c_pos);
  const double cn = static_cast<double>(cost.c_neg);

  RunRecord rec;
  rec.algo = Algo::cs;
  rec.ensemble.cost = cost;
  const std::uint64_t t0 = now_nanos();

  for (std::size_t t = 1; t <= rounds; ++t) {
    const double t_pos = mass({d.data(), m});
    const double t_neg = mass({d.data() + m, n - m});

    // Every stump pays a full hyperbolic solve; the winner is the largest
    // alpha (ties to lowest index), the same goodness rule the double-base
    // search uses. Selecting by the per-stump loss value instead would
    // disagree with that rule on a small fraction of candidate pairs when
    // C_P != C_N; the winner's loss still equals the pre-normalization
    // weight sum recorded in the bound logs.
    bool have_best = false;
    std::size_t best = 0;
    double best_alpha = 0.0, best_b = 0.0, best_derr = 0.0;
    for (std::size_t f = 0; f < pool.size(); ++f) {
      double b_err = 0.0, d_err = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        if (!pool.correct(f, i)) b_err += d[i];
      for (std::size_t i = m; i < n; ++i)
        if (!pool.correct(f, i)) d_err += d[i];
      // Same smoothing band as class_errors, scaled by the class masses.
      b_err = std::clamp(b_err, kEpsMin * t_pos, (1.0 - kEpsMin) * t_pos);
      d_err = std::clamp(d_err, kEpsMin * t_neg, (1.0 - kEpsMin) * t_neg);

      const double alpha = cs_alpha_solve({t_pos, t_neg, b_err, d_err}, cost);
      ++rec.totals.roots_computed;
      ++rec.totals.stumps_evaluated;
      if (alpha <= 0.0) continue;  // the flipped twin carries the positive-alpha version
      if (!have_best || alpha > best_alpha + kTieMargin * std::max(1.0, best_alpha)) {
        have_best = true;
        best = f;
        best_alpha = alpha;
        best_b = b_err;
        best_derr = d_err;
      }
    }
    if (!have_best) break;  // no stump attains positive alpha

    rec.ensemble.members.push_back({pool.stump(best), best_alpha});

    const double up_bad = std::exp(cp * best_alpha), up_ok = std::exp(-cp * best_alpha);
    const double un_bad = std::exp(cn * best_alpha), un_ok = std::exp(-cn * best_alpha);
    for (std::size_t i = 0; i < m; ++i) d[i] *= pool.correct(best, i) ? up_ok : up_bad;
    for (std::size_t i = m; i < n; ++i) d[i] *= pool.correct(best, i) ? un_ok : un_bad;
    const double z = mass(d);
    log_z += std::log(z);
    for (double& v : d) v /= z;

    RoundLog log;
    log.round = t;
    log.stump_index = best;
    log.alpha = best_alpha;
    log.eps_pos = std::clamp(best_b / t_pos, kEpsMin, 1.0 - kEpsMin);
    log.eps_neg = std::clamp(best_derr / t_neg, kEpsMin, 1.0 - kEpsMin);
    log.a = cp * t_pos / (cp * t_pos + cn * t_neg);
    log.b = 1.0 - log.a;
    log.roots_computed_cum = rec.totals.roots_computed;
    log.stumps_evaluated_cum = rec.totals.stumps_evaluated;
    log.wall_nanos_cum = now_nanos() - t0;
    log.log_bound_pos = log_z + std::log(mass({d.data(), m}));
    log.log_bound_neg = log_z + std::log(mass({d.data() + m, n - m}));
    rec.per_round.push_back(log);
  }
  rec.totals.wall_nanos = now_nanos() - t0;
  return rec;
}

RunRecord run_trainer(const Dataset& ds, const StumpPool& pool, const TrainConfig& cfg) {
  switch (cfg.algo) {
    case Algo::adaboost:
      return adaboost_train(ds, pool, cfg.rounds);
    case Algo::cs:
      return cs_train(ds, pool, cfg.cost, cfg.rounds);
    case Algo::db:
    case Algo::db_nocs: {
      const std::vector<double> init = initial_distribution(ds, cfg.init);
      return db_train(ds, pool, cfg, &init);
    }
  }
  throw std::invalid_argument("run_trainer: unknown algorithm");
}

}  // namespace costboost
