// Core domain types shared by the trainers and evaluators: datasets with the
// positives-first ordering convention, coprime cost pairs, decision stumps and
// alpha-weighted stump ensembles, and the per-class weight state used by the
// double-base training loop. No training logic lives here.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace costboost {

// Smallest class-conditional error admitted into any solver. A stump that is
// perfect (or perfectly wrong) on a class would otherwise drive alpha to
// infinity.
inline constexpr double kEpsMin = 1e-10;

// Labeled feature matrix, examples ordered positives-first: labels[i] = +1
// for i < pos_count and -1 afterwards. Use from_examples() to build from
// arbitrarily ordered rows; the applied permutation is kept in
// original_index for reporting.
class Dataset {
 public:
  Dataset() = default;

  // Reorders rows positives-first (stable) and validates: both classes
  // present, labels in {+1,-1}, all features finite.
  static Dataset from_examples(std::size_t n_features,
                               std::vector<double> features,
                               std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return n_features_; }
  std::size_t pos_count() const { return pos_count_; }
  std::size_t neg_count() const { return labels_.size() - pos_count_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * n_features_, n_features_};
  }
  double value(std::size_t i, std::size_t feature) const {
    return features_[i * n_features_ + feature];
  }
  int label(std::size_t i) const { return labels_[i]; }

  // original_index()[i] = row index of example i in the input ordering.
  const std::vector<std::size_t>& original_index() const { return original_index_; }

 private:
  std::size_t n_features_ = 0;
  std::size_t pos_count_ = 0;
  std::vector<double> features_;  // row-major, size() * dim()
  std::vector<int> labels_;
  std::vector<std::size_t> original_index_;
};

// Misclassification costs (C_P, C_N) as coprime positive integers. Only the
// ratio matters for the optimization, and the polynomial degree is 2*C_P, so
// the pair is always stored gcd-reduced.
struct CostPair {
  long long c_pos = 1;
  long long c_neg = 1;

  static CostPair from_ratio(long long c_pos, long long c_neg);

  // Asymmetry of the cost matrix, in (0,1); 1/2 is the symmetric problem.
  double gamma() const {
    return static_cast<double>(c_pos) / static_cast<double>(c_pos + c_neg);
  }
  bool operator==(const CostPair&) const = default;
};

// Single-feature threshold rule with bipolar output:
//   h(x) = polarity * sign(x[feature] - threshold), sign(0) = +1.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;  // +1 or -1

  int predict_value(double v) const {
    const int s = (v - threshold) >= 0.0 ? 1 : -1;
    return polarity * s;
  }
  int predict(std::span<const double> x) const { return predict_value(x[feature]); }
};

struct EnsembleMember {
  Stump stump;
  double alpha = 0.0;
};

// Strong classifier: sign of the alpha-weighted sum of stump outputs. Every
// appended alpha is positive; the cost pair records what the ensemble was
// trained for.
struct Ensemble {
  CostPair cost;
  std::vector<EnsembleMember> members;
};

// f(x) = sum_t alpha_t * h_t(x). Empty ensemble scores 0.
double ensemble_score(const Ensemble& e, std::span<const double> x);

// sign(f(x)) with the tie score = 0 deciding +1.
int ensemble_classify(const Ensemble& e, std::span<const double> x);

// Per-class weight state of the double-base loop: two normalized
// subdistributions plus the log-domain accumulators ln(W_P * A_P) and
// ln(W_N * A_N). The class weights W are folded into the accumulators at
// initialization, so the statics and the bound need no separate W factors.
struct WeightState {
  std::vector<double> d_pos;  // length m, sums to 1
  std::vector<double> d_neg;  // length n-m, sums to 1
  double log_acc_pos = 0.0;
  double log_acc_neg = 0.0;
  double w_pos = 0.0;
  double w_neg = 0.0;
};

// JSON serialization: {"cost": [C_P, C_N], "members": [{feature, threshold,
// polarity, alpha}, ...]}, stable field order, round-trip exact doubles.
std::string ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const std::string& text);
void save_ensemble(const Ensemble& e, const std::string& path);
Ensemble load_ensemble(const std::string& path);

}  // namespace costboost
