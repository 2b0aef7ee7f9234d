// Training configuration, instrumented run records shared by all trainers,
// and the double-base training loop itself (with and without the conditional
// search). Every trainer logs the same per-round fields so runs are directly
// comparable in the benchmark.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "costboost/core.hpp"
#include "costboost/weak.hpp"

namespace costboost {

enum class Algo { adaboost, cs, db, db_nocs };

const char* algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

enum class InitWeights { uniform, class_balanced };

struct TrainConfig {
  CostPair cost;
  std::size_t rounds = 1;
  PoolSpec pool_spec = PoolSpec::all_midpoints();
  std::uint64_t seed = 0;
  Algo algo = Algo::db;
  InitWeights init = InitWeights::uniform;
};

// One row per completed boosting round. log_bound_pos/neg are the log-domain
// class shares of the exponential bound; exp(lbp) + exp(lbn) is the bound
// value after the round.
struct RoundLog {
  std::size_t round = 0;  // 1-based
  std::size_t stump_index = 0;
  double alpha = 0.0;
  double eps_pos = 0.0;
  double eps_neg = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t roots_computed_cum = 0;
  std::uint64_t stumps_evaluated_cum = 0;
  std::uint64_t wall_nanos_cum = 0;
  double log_bound_pos = 0.0;
  double log_bound_neg = 0.0;
};

struct RunTotals {
  std::uint64_t roots_computed = 0;
  std::uint64_t stumps_evaluated = 0;
  std::uint64_t wall_nanos = 0;
};

struct RunRecord {
  Algo algo = Algo::db;
  Ensemble ensemble;
  std::vector<RoundLog> per_round;
  RunTotals totals;
};

// The double-base loop over a prebuilt pool. cfg.algo selects the search:
// db prunes with the conditional search, db_nocs solves every stump passing
// the Contribution Condition. Stops early (partial ensemble) when no stump
// passes. initial_weights defaults by cfg.init; when given it must be a
// strictly positive length-n distribution.
RunRecord db_train(const Dataset& ds, const StumpPool& pool, const TrainConfig& cfg,
                   const std::vector<double>* initial_weights = nullptr);

// Convenience overload building the pool from cfg.pool_spec.
RunRecord db_train(const Dataset& ds, const TrainConfig& cfg,
                   const std::vector<double>* initial_weights = nullptr);

// Exponential-bound trace [E~_0, E~_1, ..., E~_T] with E~_0 = 1; strictly
// decreasing while every appended alpha is positive.
std::vector<double> bound_trace(const RunRecord& rec);

// Initial joint distribution for a trainer: uniform 1/n, or 1/(2m) per
// positive and 1/(2(n-m)) per negative.
std::vector<double> initial_distribution(const Dataset& ds, InitWeights init);

// Run-record serialization: JSON (totals + per-round array) and flat CSV
// (one row per round).
std::string run_record_to_json(const RunRecord& rec);
std::string run_record_to_csv(const RunRecord& rec);
void save_run_record(const RunRecord& rec, const std::string& json_path,
                     const std::string& csv_path);

}  // namespace costboost
