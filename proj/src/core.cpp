#include "costboost/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace costboost {

Dataset Dataset::from_examples(std::size_t n_features,
                               std::vector<double> features,
                               std::vector<int> labels) {
  const std::size_t n = labels.size();
  if (n_features == 0) throw std::invalid_argument("dataset: n_features must be positive");
  if (features.size() != n * n_features)
    throw std::invalid_argument("dataset: feature matrix size does not match labels");
  for (double v : features)
    if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite feature value");

  std::size_t m = 0;
  for (int y : labels) {
    if (y != 1 && y != -1) throw std::invalid_argument("dataset: labels must be +1 or -1");
    if (y == 1) ++m;
  }
  if (m == 0 || m == n) throw std::invalid_argument("dataset: both classes must be present");

  // Stable positives-first permutation.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels[a] > labels[b]; });

  Dataset ds;
  ds.n_features_ = n_features;
  ds.pos_count_ = m;
  ds.features_.resize(n * n_features);
  ds.labels_.resize(n);
  ds.original_index_ = order;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = order[i];
    ds.labels_[i] = labels[src];
    std::copy_n(features.begin() + static_cast<std::ptrdiff_t>(src * n_features), n_features,
                ds.features_.begin() + static_cast<std::ptrdiff_t>(i * n_features));
  }
  return ds;
}

CostPair CostPair::from_ratio(long long c_pos, long long c_neg) {
  if (c_pos < 1 || c_neg < 1)
    throw std::invalid_argument("cost pair: both costs must be positive integers");
  const long long g = std::gcd(c_pos, c_neg);
  return CostPair{c_pos / g, c_neg / g};
}

double ensemble_score(const Ensemble& e, std::span<const double> x) {
  double score = 0.0;
  for (const auto& m : e.members) {
    if (m.stump.feature >= x.size())
      throw std::invalid_argument("ensemble_score: feature index out of range for input vector");
    score += m.alpha * m.stump.predict(x);
  }
  return score;
}

int ensemble_classify(const Ensemble& e, std::span<const double> x) {
  return ensemble_score(e, x) >= 0.0 ? 1 : -1;
}

std::string ensemble_to_json(const Ensemble& e) {
  nlohmann::ordered_json j;
  j["cost"] = {e.cost.c_pos, e.cost.c_neg};
  auto& members = j["members"] = nlohmann::ordered_json::array();
  for (const auto& m : e.members) {
    nlohmann::ordered_json jm;
    jm["feature"] = m.stump.feature;
    jm["threshold"] = m.stump.threshold;
    jm["polarity"] = m.stump.polarity;
    jm["alpha"] = m.alpha;
    members.push_back(std::move(jm));
  }
  return j.dump(2) + "\n";
}

Ensemble ensemble_from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Ensemble e;
  e.cost = CostPair::from_ratio(j.at("cost").at(0).get<long long>(),
                                j.at("cost").at(1).get<long long>());
  for (const auto& jm : j.at("members")) {
    EnsembleMember m;
    m.stump.feature = jm.at("feature").get<std::size_t>();
    m.stump.threshold = jm.at("threshold").get<double>();
    m.stump.polarity = jm.at("polarity").get<int>();
    m.alpha = jm.at("alpha").get<double>();
    if (m.stump.polarity != 1 && m.stump.polarity != -1)
      throw std::invalid_argument("ensemble json: polarity must be +1 or -1");
    e.members.push_back(m);
  }
  return e;
}

void save_ensemble(const Ensemble& e, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << ensemble_to_json(e);
}

Ensemble load_ensemble(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open ensemble file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ensemble_from_json(ss.str());
}

}  // namespace costboost
