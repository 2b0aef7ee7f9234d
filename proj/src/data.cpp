#include "costboost/data.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "costboost/rng.hpp"

namespace costboost {

SynthSpec SynthSpec::bayes_default(std::uint64_t seed) {
  SynthSpec s;
  s.kind = SynthKind::bayes;
  s.seed = seed;
  return s;
}

SynthSpec SynthSpec::twoclouds_default(std::uint64_t seed) {
  SynthSpec s;
  s.kind = SynthKind::twoclouds;
  s.seed = seed;
  return s;
}

namespace {

void validate_spec(const SynthSpec& spec) {
  if (spec.n_pos == 0 || spec.n_neg == 0)
    throw std::invalid_argument("synth spec: both class counts must be positive");
  if (spec.n_angles < 2) throw std::invalid_argument("synth spec: n_angles must be >= 2");
  if (spec.kind == SynthKind::bayes) {
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("synth spec: sigma must be positive");
    if (spec.mean_pos == spec.mean_neg)
      throw std::invalid_argument("synth spec: class means must differ");
  } else {
    if (!(spec.pos_radius > 0.0))
      throw std::invalid_argument("synth spec: pos_radius must be positive");
    if (!(spec.neg_radii[0] >= 0.0) || !(spec.neg_radii[1] > spec.neg_radii[0]))
      throw std::invalid_argument("synth spec: neg_radii must satisfy 0 <= inner < outer");
    // the scenario is non-separable by construction: the disk must meet the
    // annulus band
    const double d = std::hypot(spec.pos_center[0] - spec.neg_center[0],
                                spec.pos_center[1] - spec.neg_center[1]);
    const double lo = std::max(0.0, d - spec.pos_radius);
    const double hi = d + spec.pos_radius;
    if (hi < spec.neg_radii[0] || lo > spec.neg_radii[1])
      throw std::invalid_argument("synth spec: twoclouds regions do not overlap");
  }
}

constexpr double kPi = 3.141592653589793238462643383279;

}  // namespace

SynthData gen_synth(const SynthSpec& spec) {
  validate_spec(spec);
  auto eng = substream(spec.seed, RngPurpose::points);
  const std::size_t n = spec.n_pos + spec.n_neg;

  std::vector<std::array<double, 2>> points;
  points.reserve(n);
  if (spec.kind == SynthKind::bayes) {
    for (std::size_t i = 0; i < spec.n_pos; ++i) {
      const double gx = next_normal(eng), gy = next_normal(eng);
      points.push_back({spec.mean_pos[0] + spec.sigma * gx, spec.mean_pos[1] + spec.sigma * gy});
    }
    for (std::size_t i = 0; i < spec.n_neg; ++i) {
      const double gx = next_normal(eng), gy = next_normal(eng);
      points.push_back({spec.mean_neg[0] + spec.sigma * gx, spec.mean_neg[1] + spec.sigma * gy});
    }
  } else {
    for (std::size_t i = 0; i < spec.n_pos; ++i) {
      const double r = spec.pos_radius * std::sqrt(next_unit(eng));
      const double th = 2.0 * kPi * next_unit(eng);
      points.push_back({spec.pos_center[0] + r * std::cos(th),
                        spec.pos_center[1] + r * std::sin(th)});
    }
    const double r0sq = spec.neg_radii[0] * spec.neg_radii[0];
    const double r1sq = spec.neg_radii[1] * spec.neg_radii[1];
    for (std::size_t i = 0; i < spec.n_neg; ++i) {
      const double r = std::sqrt(r0sq + (r1sq - r0sq) * next_unit(eng));
      const double th = 2.0 * kPi * next_unit(eng);
      points.push_back({spec.neg_center[0] + r * std::cos(th),
                        spec.neg_center[1] + r * std::sin(th)});
    }
  }

  // Projection features p . (cos theta_k, sin theta_k); angles modulo pi
  // suffice because the stump pool carries both polarities. Axis-aligned
  // directions snap to exact unit vectors so those features reproduce the
  // raw coordinates bit for bit.
  const auto snap = [](double v) {
    if (std::fabs(v) < 1e-12) return 0.0;
    if (std::fabs(v - 1.0) < 1e-12) return 1.0;
    if (std::fabs(v + 1.0) < 1e-12) return -1.0;
    return v;
  };
  std::vector<double> features(n * spec.n_angles);
  for (std::size_t k = 0; k < spec.n_angles; ++k) {
    const double th = static_cast<double>(k) * kPi / static_cast<double>(spec.n_angles);
    const double c = snap(std::cos(th)), s = snap(std::sin(th));
    for (std::size_t i = 0; i < n; ++i)
      features[i * spec.n_angles + k] = points[i][0] * c + points[i][1] * s;
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < spec.n_pos ? 1 : -1;

  SynthData out;
  out.dataset = Dataset::from_examples(spec.n_angles, std::move(features), std::move(labels));
  out.points = std::move(points);
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return errno == 0 && end == t.c_str() + t.size() && std::isfinite(out);
}

}  // namespace

Dataset load_csv(const std::string& path, const LabelColumn& label_column,
                 const std::string& positive_label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open csv file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw std::invalid_argument("csv file is empty: " + path);

  const std::size_t n_cols = rows.front().size();
  if (n_cols < 2) throw std::invalid_argument("csv needs at least one feature column: " + path);
  const std::size_t label_idx = label_column.use_last ? n_cols - 1 : label_column.idx;
  if (label_idx >= n_cols) throw std::invalid_argument("csv label column index out of range");

  // Header detection: a first row whose feature cells are not all numeric.
  std::size_t first = 0;
  {
    bool numeric = true;
    double tmp;
    for (std::size_t c = 0; c < n_cols && numeric; ++c)
      if (c != label_idx && !parse_double(rows[0][c], tmp)) numeric = false;
    if (!numeric) first = 1;
    if (first == rows.size()) throw std::invalid_argument("csv has a header but no data rows");
  }

  const std::size_t n = rows.size() - first;
  const std::size_t d = n_cols - 1;
  std::vector<double> features(n * d);
  std::vector<int> labels(n);
  std::string first_label, second_label;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& cells = rows[r + first];
    if (cells.size() != n_cols) {
      std::ostringstream msg;
      msg << "csv row " << r + first + 1 << ": expected " << n_cols << " cells, got "
          << cells.size();
      throw std::invalid_argument(msg.str());
    }
    std::size_t out_c = 0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (c == label_idx) continue;
      double v;
      if (!parse_double(cells[c], v)) {
        std::ostringstream msg;
        msg << "csv row " << r + first + 1 << ", column " << c + 1
            << ": cannot parse feature value '" << cells[c] << "'";
        throw std::invalid_argument(msg.str());
      }
      features[r * d + out_c++] = v;
    }
    const std::string lab = trim(cells[label_idx]);
    if (first_label.empty())
      first_label = lab;
    else if (lab != first_label && second_label.empty())
      second_label = lab;
    else if (lab != first_label && lab != second_label) {
      throw std::invalid_argument("csv label column has more than two distinct values ('" +
                                  first_label + "', '" + second_label + "', '" + lab + "')");
    }
    labels[r] = lab == positive_label ? 1 : -1;
  }
  if (second_label.empty())
    throw std::invalid_argument("csv label column has a single distinct value: '" + first_label +
                                "'");
  if (positive_label != first_label && positive_label != second_label)
    throw std::invalid_argument("positive label '" + positive_label +
                                "' does not occur in the csv label column");
  return Dataset::from_examples(d, std::move(features), std::move(labels));
}

void save_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t c = 0; c < ds.dim(); ++c) out << "f" << c << ",";
  out << "label\n";
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t c = 0; c < ds.dim(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.value(i, c));
      out << buf << ",";
    }
    out << ds.label(i) << "\n";
  }
}

void save_points_csv(const std::vector<std::array<double, 2>>& points, const Dataset& ds,
                     const std::string& path) {
  if (points.size() != ds.size())
    throw std::invalid_argument("points/dataset size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "x,y,label\n";
  char buf[128];
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d\n", points[i][0], points[i][1], ds.label(i));
    out << buf;
  }
}

std::string synth_spec_to_json(const SynthSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = spec.kind == SynthKind::bayes ? "bayes" : "twoclouds";
  j["n_pos"] = spec.n_pos;
  j["n_neg"] = spec.n_neg;
  j["seed"] = spec.seed;
  j["n_angles"] = spec.n_angles;
  if (spec.kind == SynthKind::bayes) {
    j["params"] = {{"mean_pos", spec.mean_pos},
                   {"mean_neg", spec.mean_neg},
                   {"sigma", spec.sigma}};
  } else {
    j["params"] = {{"pos_center", spec.pos_center},
                   {"pos_radius", spec.pos_radius},
                   {"neg_center", spec.neg_center},
                   {"neg_radii", spec.neg_radii}};
  }
  return j.dump(2) + "\n";
}

SynthSpec synth_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("synth spec: invalid json: ") + e.what());
  }
  SynthSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bayes")
    spec.kind = SynthKind::bayes;
  else if (kind == "twoclouds")
    spec.kind = SynthKind::twoclouds;
  else
    throw std::invalid_argument("synth spec: kind must be 'bayes' or 'twoclouds'");
  spec.n_pos = j.at("n_pos").get<std::size_t>();
  spec.n_neg = j.at("n_neg").get<std::size_t>();
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.n_angles = j.value("n_angles", std::size_t{16});
  if (j.contains("params")) {
    const auto& p = j["params"];
    if (spec.kind == SynthKind::bayes) {
      if (p.contains("mean_pos")) spec.mean_pos = p["mean_pos"].get<std::array<double, 2>>();
      if (p.contains("mean_neg")) spec.mean_neg = p["mean_neg"].get<std::array<double, 2>>();
      if (p.contains("sigma")) spec.sigma = p["sigma"].get<double>();
    } else {
      if (p.contains("pos_center")) spec.pos_center = p["pos_center"].get<std::array<double, 2>>();
      if (p.contains("pos_radius")) spec.pos_radius = p["pos_radius"].get<double>();
      if (p.contains("neg_center")) spec.neg_center = p["neg_center"].get<std::array<double, 2>>();
      if (p.contains("neg_radii")) spec.neg_radii = p["neg_radii"].get<std::array<double, 2>>();
    }
  }
  validate_spec(spec);
  return spec;
}

}  // namespace costboost
