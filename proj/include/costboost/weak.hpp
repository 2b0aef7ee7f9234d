// Stump pool construction and weighted error evaluation. The pool carries a
// correctness bit-matrix built once per training set, so every per-round error
// computation is a sequential read over packed bits. That cache is shared by
// all trainers; the benchmark relies on it being identical across algorithms.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "costboost/core.hpp"

namespace costboost {

// Threshold policy for build_stump_pool: all midpoints between consecutive
// distinct values (plus one sentinel per side), or k quantile midpoints.
struct PoolSpec {
  std::size_t thresholds_per_feature = 0;  // 0 = all midpoints

  static PoolSpec all_midpoints() { return PoolSpec{0}; }
  static PoolSpec quantile(std::size_t k) { return PoolSpec{k}; }
  bool is_all_midpoints() const { return thresholds_per_feature == 0; }
  bool operator==(const PoolSpec&) const = default;
};

// Class-conditional weighted errors of one stump, clamped to
// [kEpsMin, 1 - kEpsMin] before entering any solver.
struct ClassErrors {
  double eps_pos = 0.0;
  double eps_neg = 0.0;
};

// Deduplicated candidate stumps plus the n x F correctness cache: bit i of
// column f is set iff stump f predicts example i's label.
class StumpPool {
 public:
  StumpPool(std::vector<Stump> stumps, std::size_t n_examples,
            std::size_t words_per_stump, std::vector<std::uint64_t> correct_bits)
      : stumps_(std::move(stumps)),
        n_examples_(n_examples),
        words_per_stump_(words_per_stump),
        correct_bits_(std::move(correct_bits)) {}

  std::size_t size() const { return stumps_.size(); }
  std::size_t n_examples() const { return n_examples_; }
  const Stump& stump(std::size_t f) const { return stumps_[f]; }
  const std::vector<Stump>& stumps() const { return stumps_; }

  bool correct(std::size_t f, std::size_t i) const {
    return (correct_bits_[f * words_per_stump_ + (i >> 6)] >> (i & 63)) & 1u;
  }
  std::span<const std::uint64_t> column(std::size_t f) const {
    return {correct_bits_.data() + f * words_per_stump_, words_per_stump_};
  }

 private:
  std::vector<Stump> stumps_;
  std::size_t n_examples_ = 0;
  std::size_t words_per_stump_ = 0;
  std::vector<std::uint64_t> correct_bits_;  // stump-major
};

// Builds the pool for a dataset. Thresholds never coincide with data values:
// interior thresholds are midpoints of consecutive distinct sorted values,
// sentinels sit half a gap outside the range. Both polarities are emitted and
// stumps with identical prediction columns are dropped (first one wins, in
// (feature, threshold, polarity) order). A feature with a single distinct
// value contributes only its sentinel (constant) stumps.
StumpPool build_stump_pool(const Dataset& ds, const PoolSpec& spec);

// eps_pos = weight of misclassified positives under w.d_pos, eps_neg likewise
// under w.d_neg; both clamped.
ClassErrors class_errors(const StumpPool& pool, std::size_t f, const WeightState& w);

// Plain weighted error over a joint length-n distribution (classic AdaBoost).
double weighted_error(const StumpPool& pool, std::size_t f, std::span<const double> weights);

}  // namespace costboost
