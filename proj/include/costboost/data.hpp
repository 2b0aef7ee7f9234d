// Synthetic dataset generators (the bivariate Gaussian scenario and the
// overlapping disk/annulus "two clouds" scenario), projection-angle feature
// construction, and CSV ingestion for tabular data.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "costboost/core.hpp"

namespace costboost {

enum class SynthKind { bayes, twoclouds };

struct SynthSpec {
  SynthKind kind = SynthKind::bayes;
  std::size_t n_pos = 500;
  std::size_t n_neg = 500;
  std::uint64_t seed = 0;
  std::size_t n_angles = 16;

  // Gaussian scenario parameters.
  std::array<double, 2> mean_pos{1.0, 0.0};
  std::array<double, 2> mean_neg{-1.0, 0.0};
  double sigma = 1.0;

  // Two-clouds parameters: positives uniform on a disk, negatives uniform on
  // an annulus with a different centroid; the regions overlap.
  std::array<double, 2> pos_center{0.0, 0.0};
  double pos_radius = 1.0;
  std::array<double, 2> neg_center{0.4, 0.0};
  std::array<double, 2> neg_radii{0.8, 1.8};

  static SynthSpec bayes_default(std::uint64_t seed);
  static SynthSpec twoclouds_default(std::uint64_t seed);
};

// Generated dataset plus the raw 2D points (row-aligned with the dataset,
// positives first) for plotting and for closed-form decision rules.
struct SynthData {
  Dataset dataset;
  std::vector<std::array<double, 2>> points;
};

// Draws the 2D points deterministically from (spec, seed) and projects each
// point onto n_angles directions theta_k = k*pi/n_angles; with n_angles = 2
// the features are exactly the raw coordinates.
SynthData gen_synth(const SynthSpec& spec);

// Column selector for load_csv: the last column or an explicit index.
struct LabelColumn {
  static LabelColumn last() { return LabelColumn{true, 0}; }
  static LabelColumn index(std::size_t i) { return LabelColumn{false, i}; }
  bool use_last = true;
  std::size_t idx = 0;
};

// Reads a comma-separated file: every non-label cell must parse as a finite
// real, the label column must carry exactly two distinct values, and rows
// with label == positive_label become the positive class. A non-numeric
// first row is treated as a header and skipped. The returned dataset is
// positives-first; original row order is kept in Dataset::original_index().
Dataset load_csv(const std::string& path, const LabelColumn& label_column,
                 const std::string& positive_label);

// Writes features plus a +1/-1 label column (header f0,...,label); the exact
// inverse of load_csv with positive_label "1".
void save_dataset_csv(const Dataset& ds, const std::string& path);

// Raw 2D points with labels (header x,y,label).
void save_points_csv(const std::vector<std::array<double, 2>>& points,
                     const Dataset& ds, const std::string& path);

// Synthetic spec as a JSON config block, and back.
std::string synth_spec_to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& text);

}  // namespace costboost
