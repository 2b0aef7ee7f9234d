#include "costboost/weak.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace costboost {

namespace {

// Candidate thresholds for one feature. `sorted` carries duplicates (for
// quantile positions), `distinct` does not.
std::vector<double> feature_thresholds(const std::vector<double>& sorted,
                                       const std::vector<double>& distinct,
                                       const PoolSpec& spec) {
  const std::size_t k = distinct.size();
  // Half-gap sentinel offsets; 0.5 when the feature is constant.
  const double lo_gap = k > 1 ? (distinct[1] - distinct[0]) / 2.0 : 0.5;
  const double hi_gap = k > 1 ? (distinct[k - 1] - distinct[k - 2]) / 2.0 : 0.5;
  const double lo_sentinel = distinct.front() - lo_gap;
  const double hi_sentinel = distinct.back() + hi_gap;

  std::vector<double> interior;
  interior.reserve(k > 0 ? k - 1 : 0);
  for (std::size_t i = 0; i + 1 < k; ++i)
    interior.push_back((distinct[i] + distinct[i + 1]) / 2.0);

  if (spec.is_all_midpoints()) {
    std::vector<double> mids;
    mids.reserve(interior.size() + 2);
    mids.push_back(lo_sentinel);
    mids.insert(mids.end(), interior.begin(), interior.end());
    mids.push_back(hi_sentinel);
    return mids;
  }

  // Quantile mode: k equally spaced quantiles of the value distribution,
  // each snapped to the nearest interior midpoint. Falls back to sentinels
  // when the feature has no interior midpoints.
  if (interior.empty()) return {lo_sentinel, hi_sentinel};
  const std::size_t want = spec.thresholds_per_feature;
  if (interior.size() <= want) return interior;
  std::vector<double> picked;
  picked.reserve(want);
  for (std::size_t j = 0; j < want; ++j) {
    const double q = (static_cast<double>(j) + 0.5) / static_cast<double>(want);
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const double v = sorted[static_cast<std::size_t>(std::llround(pos))];
    auto it = std::lower_bound(interior.begin(), interior.end(), v);
    if (it == interior.end()) --it;
    else if (it != interior.begin() && v - *(it - 1) < *it - v) --it;
    picked.push_back(*it);
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  return picked;
}

struct ColumnHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (std::uint64_t w : v) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

StumpPool build_stump_pool(const Dataset& ds, const PoolSpec& spec) {
  const std::size_t n = ds.size();
  const std::size_t words = (n + 63) / 64;

  std::vector<Stump> stumps;
  std::vector<std::uint64_t> bits;
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, ColumnHash> seen;

  std::vector<double> values(n);
  std::vector<std::uint64_t> column(words);
  for (std::size_t f = 0; f < ds.dim(); ++f) {
    for (std::size_t i = 0; i < n; ++i) values[i] = ds.value(i, f);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    for (double thr : feature_thresholds(sorted, distinct, spec)) {
      for (int pol : {+1, -1}) {
        const Stump s{f, thr, pol};
        std::fill(column.begin(), column.end(), 0ull);
        for (std::size_t i = 0; i < n; ++i)
          if (s.predict_value(values[i]) == ds.label(i))
            column[i >> 6] |= 1ull << (i & 63);
        if (seen.emplace(column, stumps.size()).second) {
          stumps.push_back(s);
          bits.insert(bits.end(), column.begin(), column.end());
        }
      }
    }
  }
  return StumpPool(std::move(stumps), n, words, std::move(bits));
}

ClassErrors class_errors(const StumpPool& pool, std::size_t f, const WeightState& w) {
  if (f >= pool.size()) throw std::invalid_argument("class_errors: stump index out of range");
  const std::size_t m = w.d_pos.size();
  double ep = 0.0, en = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (!pool.correct(f, i)) ep += w.d_pos[i];
  for (std::size_t i = 0; i < w.d_neg.size(); ++i)
    if (!pool.correct(f, m + i)) en += w.d_neg[i];
  return ClassErrors{std::clamp(ep, kEpsMin, 1.0 - kEpsMin),
                     std::clamp(en, kEpsMin, 1.0 - kEpsMin)};
}

double weighted_error(const StumpPool& pool, std::size_t f, std::span<const double> weights) {
  if (f >= pool.size()) throw std::invalid_argument("weighted_error: stump index out of range");
  double err = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!pool.correct(f, i)) err += weights[i];
  return err;
}

}  // namespace costboost
