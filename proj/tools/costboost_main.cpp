// Command-line front end: dataset generation, training, the cost-grid
// benchmark, cost-space evaluation and lower envelopes. Exit codes: 0 on
// success, 2 for usage/validation problems, 1 for runtime failures.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "costboost/csboost.hpp"
#include "costboost/data.hpp"
#include "costboost/eval.hpp"
#include "costboost/train.hpp"

namespace {

using namespace costboost;

constexpr const char* kVersion = "0.1.0";

// The nineteen-pair sweep used throughout the experiments.
const std::vector<std::pair<long long, long long>> kPaperGrid = {
    {1, 100}, {1, 50}, {1, 25}, {1, 10}, {1, 7}, {1, 5}, {1, 3}, {1, 2}, {2, 3}, {1, 1},
    {3, 2},   {2, 1},  {3, 1},  {5, 1},  {7, 1}, {10, 1}, {25, 1}, {50, 1}, {100, 1}};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string provenance(std::uint64_t seed, const std::string& config_text) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "# costboost %s\n# seed=%llu config_hash=%016llx\n", kVersion,
                static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(fnv1a(config_text)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

PoolSpec parse_pool_spec(const std::string& text) {
  if (text == "all" || text == "all-midpoints") return PoolSpec::all_midpoints();
  try {
    const long k = std::stol(text);
    if (k < 1) throw std::invalid_argument("");
    return PoolSpec::quantile(static_cast<std::size_t>(k));
  } catch (...) {
    throw std::invalid_argument("thresholds: expected 'all-midpoints' or a positive integer, got '" +
                                text + "'");
  }
}

InitWeights parse_init(const std::string& text) {
  if (text == "uniform") return InitWeights::uniform;
  if (text == "class-balanced") return InitWeights::class_balanced;
  throw std::invalid_argument("init: expected 'uniform' or 'class-balanced', got '" + text + "'");
}

LabelColumn parse_label_column(const std::string& text) {
  if (text == "last") return LabelColumn::last();
  try {
    const long idx = std::stol(text);
    if (idx < 0) throw std::invalid_argument("");
    return LabelColumn::index(static_cast<std::size_t>(idx));
  } catch (...) {
    throw std::invalid_argument("label-column: expected 'last' or a column index, got '" + text +
                                "'");
  }
}

std::vector<CostPair> parse_costs(const std::string& text) {
  if (text == "paper-grid") {
    std::vector<CostPair> grid;
    for (const auto& [cp, cn] : kPaperGrid) grid.push_back(CostPair::from_ratio(cp, cn));
    return grid;
  }
  std::vector<CostPair> costs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("costs: expected 'paper-grid' or 'CP:CN,...', got '" + text +
                                  "'");
    costs.push_back(CostPair::from_ratio(std::stoll(item.substr(0, colon)),
                                         std::stoll(item.substr(colon + 1))));
  }
  if (costs.empty()) throw std::invalid_argument("costs: empty list");
  return costs;
}

char* fmt(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenArgs {
  std::string config_path;
  std::string out_dir;
  std::string name = "data";
};

int run_gen(const GenArgs& args) {
  const SynthSpec spec = synth_spec_from_json(read_file(args.config_path));
  const SynthData data = gen_synth(spec);
  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  save_dataset_csv(data.dataset, (dir / (args.name + ".csv")).string());
  save_points_csv(data.points, data.dataset, (dir / (args.name + "_points.csv")).string());
  write_file((dir / (args.name + "_spec.json")).string(), synth_spec_to_json(spec));
  std::printf("wrote %s{.csv,_points.csv,_spec.json}: %zu examples (%zu positive), %zu features\n",
              (dir / args.name).string().c_str(), data.dataset.size(), data.dataset.pos_count(),
              data.dataset.dim());
  return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data_path;
  std::string label_column = "last";
  std::string positive_label = "1";
  std::string algo = "db";
  long long cp = 1, cn = 1;
  std::size_t rounds = 100;
  std::uint64_t seed = 0;
  std::string thresholds = "all-midpoints";
  std::string init = "uniform";
  std::string out_prefix;
};

int run_train(const TrainArgs& args) {
  const auto algo = algo_from_name(args.algo);
  if (!algo) throw std::invalid_argument("unknown algorithm: " + args.algo);

  const Dataset ds = load_csv(args.data_path, parse_label_column(args.label_column),
                              args.positive_label);
  TrainConfig cfg;
  cfg.cost = CostPair::from_ratio(args.cp, args.cn);
  cfg.rounds = args.rounds;
  cfg.pool_spec = parse_pool_spec(args.thresholds);
  cfg.seed = args.seed;
  cfg.algo = *algo;
  cfg.init = parse_init(args.init);

  const StumpPool pool = build_stump_pool(ds, cfg.pool_spec);
  const RunRecord rec = run_trainer(ds, pool, cfg);

  save_ensemble(rec.ensemble, args.out_prefix + "_ensemble.json");
  save_run_record(rec, args.out_prefix + "_record.json", args.out_prefix + "_record.csv");
  std::printf("%s: %zu rounds, %llu roots, %.3f s; wrote %s_{ensemble.json,record.json,record.csv}\n",
              algo_name(cfg.algo), rec.per_round.size(),
              static_cast<unsigned long long>(rec.totals.roots_computed),
              static_cast<double>(rec.totals.wall_nanos) * 1e-9, args.out_prefix.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string config_path;
  std::string out_dir;
  std::size_t workers = 0;  // 0 = config or hardware default
  bool sequential_timing = false;
};

struct BenchDataset {
  std::string name;
  Dataset ds;
};

struct BenchCell {
  std::size_t dataset = 0;
  CostPair cost;
  Algo algo = Algo::db;
  // results
  bool ok = false;
  std::string error;
  std::size_t rounds_completed = 0;
  std::uint64_t roots = 0;
  std::uint64_t stumps = 0;
  std::uint64_t median_nanos = 0;
};

int run_bench(const BenchArgs& args) {
  const std::string config_text = read_file(args.config_path);
  nlohmann::json cfg_json;
  try {
    cfg_json = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bench config: invalid json: ") + e.what());
  }

  std::vector<Algo> algos;
  for (const auto& name : cfg_json.value("algos", std::vector<std::string>{"cs", "db", "db_nocs"})) {
    const auto a = algo_from_name(name);
    if (!a) throw std::invalid_argument("bench config: unknown algorithm '" + name + "'");
    algos.push_back(*a);
  }
  std::vector<CostPair> costs;
  if (!cfg_json.contains("costs") || cfg_json["costs"].is_string()) {
    costs = parse_costs(cfg_json.value("costs", std::string("paper-grid")));
  } else {
    for (const auto& pair : cfg_json["costs"])
      costs.push_back(CostPair::from_ratio(pair.at(0).get<long long>(),
                                           pair.at(1).get<long long>()));
  }
  const std::size_t rounds = cfg_json.value("rounds", std::size_t{100});
  const std::size_t repeats = cfg_json.value("repeats", std::size_t{1});
  if (repeats < 1) throw std::invalid_argument("bench config: repeats must be >= 1");
  PoolSpec pool_spec = PoolSpec::all_midpoints();
  if (cfg_json.contains("pool")) {
    if (cfg_json["pool"].is_string())
      pool_spec = parse_pool_spec(cfg_json["pool"].get<std::string>());
    else
      pool_spec = PoolSpec::quantile(cfg_json["pool"].get<std::size_t>());
  }
  const InitWeights init = parse_init(cfg_json.value("init", std::string("class-balanced")));
  if (algos.empty() || costs.empty()) throw std::invalid_argument("bench config: empty dimensions");
  if (!cfg_json.contains("datasets") || cfg_json["datasets"].empty())
    throw std::invalid_argument("bench config: no datasets");

  std::vector<BenchDataset> datasets;
  std::uint64_t seed = 0;
  for (const auto& dj : cfg_json["datasets"]) {
    BenchDataset bd;
    bd.name = dj.value("name", "dataset" + std::to_string(datasets.size()));
    if (dj.contains("synth")) {
      const SynthSpec spec = synth_spec_from_json(dj["synth"].dump());
      seed = spec.seed;
      bd.ds = gen_synth(spec).dataset;
    } else if (dj.contains("csv")) {
      bd.ds = load_csv(dj["csv"].get<std::string>(),
                       parse_label_column(dj.value("label_column", std::string("last"))),
                       dj.value("positive_label", std::string("1")));
    } else {
      throw std::invalid_argument("bench config: dataset entry needs 'synth' or 'csv'");
    }
    datasets.push_back(std::move(bd));
  }

  // Pools are built once per dataset and shared by every cell, so all
  // algorithms search exactly the same candidates from the same cache.
  std::vector<StumpPool> pools;
  pools.reserve(datasets.size());
  for (const auto& bd : datasets) pools.push_back(build_stump_pool(bd.ds, pool_spec));

  std::vector<BenchCell> cells;
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (const auto& cost : costs)
      for (const auto algo : algos) {
        BenchCell cell;
        cell.dataset = d;
        cell.cost = cost;
        cell.algo = algo;
        cells.push_back(std::move(cell));
      }

  std::size_t workers = args.workers;
  if (workers == 0) workers = cfg_json.value("workers", std::size_t{1});
  if (args.sequential_timing) workers = 1;
  workers = std::max<std::size_t>(1, std::min(workers, cells.size()));

  const auto run_cell = [&](BenchCell& cell) {
    try {
      TrainConfig tc;
      tc.cost = cell.cost;
      tc.rounds = rounds;
      tc.pool_spec = pool_spec;
      tc.seed = seed;
      tc.algo = cell.algo;
      tc.init = init;
      std::vector<std::uint64_t> times;
      for (std::size_t r = 0; r < repeats; ++r) {
        const RunRecord rec = run_trainer(datasets[cell.dataset].ds, pools[cell.dataset], tc);
        times.push_back(rec.totals.wall_nanos);
        if (r == 0) {
          cell.rounds_completed = rec.per_round.size();
          cell.roots = rec.totals.roots_computed;
          cell.stumps = rec.totals.stumps_evaluated;
        }
      }
      std::sort(times.begin(), times.end());
      cell.median_nanos = times[times.size() / 2];
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  if (workers == 1) {
    for (auto& cell : cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w)
      threads.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          run_cell(cells[i]);
        }
      });
    for (auto& t : threads) t.join();
  }

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  const std::string head = provenance(seed, cfg_json.dump());

  // per-cell table
  {
    std::string out = head;
    out += "dataset,algo,cost_pos,cost_neg,gamma,pool_size,rounds_completed,"
           "roots_computed,stumps_evaluated,median_wall_nanos,repeats,status\n";
    char buf[64];
    for (const auto& c : cells) {
      out += datasets[c.dataset].name;
      out += ',';
      out += algo_name(c.algo);
      out += ',' + std::to_string(c.cost.c_pos) + ',' + std::to_string(c.cost.c_neg) + ',';
      out += fmt(buf, sizeof(buf), c.cost.gamma());
      out += ',' + std::to_string(pools[c.dataset].size());
      out += ',' + std::to_string(c.rounds_completed);
      out += ',' + std::to_string(c.roots);
      out += ',' + std::to_string(c.stumps);
      out += ',' + std::to_string(c.median_nanos);
      out += ',' + std::to_string(repeats);
      out += ',';
      out += c.ok ? "ok" : ("error: " + c.error);
      out += '\n';
    }
    write_file((dir / "bench_cells.csv").string(), out);
  }

  // improvement block per dataset, aggregated over costs
  const auto totals_for = [&](std::size_t d, Algo a, std::uint64_t& zeros, std::uint64_t& nanos,
                              bool& present) {
    zeros = nanos = 0;
    present = false;
    for (const auto& c : cells)
      if (c.dataset == d && c.algo == a && c.ok) {
        zeros += c.roots;
        nanos += c.median_nanos;
        present = true;
      }
  };
  std::string impr = head;
  impr += "dataset,transition,zeros_improvement_pct,time_improvement_pct\n";
  std::string report = "costboost bench report (v" + std::string(kVersion) + ")\n";
  char buf[256];
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    std::snprintf(buf, sizeof(buf), "\n%s: %zu examples, pool %zu, rounds %zu, repeats %zu\n",
                  datasets[d].name.c_str(), datasets[d].ds.size(), pools[d].size(), rounds,
                  repeats);
    report += buf;
    struct {
      Algo from, to;
      const char* name;
    } transitions[] = {{Algo::cs, Algo::db_nocs, "CS->DBN"},
                       {Algo::db_nocs, Algo::db, "DBN->DB"},
                       {Algo::cs, Algo::db, "CS->DB"}};
    for (const auto& tr : transitions) {
      std::uint64_t z_from, t_from, z_to, t_to;
      bool have_from, have_to;
      totals_for(d, tr.from, z_from, t_from, have_from);
      totals_for(d, tr.to, z_to, t_to, have_to);
      if (!have_from || !have_to) continue;
      const double zi = 100.0 * (1.0 - static_cast<double>(z_to) / static_cast<double>(z_from));
      const double ti = 100.0 * (1.0 - static_cast<double>(t_to) / static_cast<double>(t_from));
      impr += datasets[d].name;
      impr += ',';
      impr += tr.name;
      std::snprintf(buf, sizeof(buf), ",%.4f,%.4f\n", zi, ti);
      impr += buf;
      std::snprintf(buf, sizeof(buf),
                    "  %-8s zeros %12llu -> %12llu  (%.2f%%)   time %9.3f s -> %9.3f s  (%.2f%%)\n",
                    tr.name, static_cast<unsigned long long>(z_from),
                    static_cast<unsigned long long>(z_to), zi, static_cast<double>(t_from) * 1e-9,
                    static_cast<double>(t_to) * 1e-9, ti);
      report += buf;
    }
  }
  write_file((dir / "bench_improvements.csv").string(), impr);
  write_file((dir / "bench_report.txt").string(), report);
  std::fputs(report.c_str(), stdout);

  std::size_t failed = 0;
  for (const auto& c : cells)
    if (!c.ok) {
      ++failed;
      std::fprintf(stderr, "cell %s/%s/[%lld,%lld] failed: %s\n", datasets[c.dataset].name.c_str(),
                   algo_name(c.algo), c.cost.c_pos, c.cost.c_neg, c.error.c_str());
    }
  return failed == cells.size() ? 1 : 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string model_path;
  std::string data_path;
  std::string label_column = "last";
  std::string positive_label = "1";
  std::string costs = "paper-grid";
  std::uint64_t seed = 0;
  std::string out_path;
  // cross-validation mode: train per cost instead of loading a model
  std::size_t folds = 0;
  std::string algo = "db";
  std::size_t rounds = 100;
  std::string thresholds = "all-midpoints";
  std::string init = "class-balanced";
};

int run_eval(const EvalArgs& args) {
  const Dataset ds = load_csv(args.data_path, parse_label_column(args.label_column),
                              args.positive_label);
  const std::vector<CostPair> costs = parse_costs(args.costs);
  if (args.folds == 0 && args.model_path.empty())
    throw std::invalid_argument("eval: need --model, or --folds for cross-validation");
  if (args.folds != 0 && !args.model_path.empty())
    throw std::invalid_argument("eval: --model and --folds are mutually exclusive");

  std::optional<Ensemble> model;
  std::optional<TrainConfig> cv_cfg;
  if (args.folds == 0) {
    model = load_ensemble(args.model_path);
  } else {
    if (args.folds < 2) throw std::invalid_argument("eval: --folds must be >= 2");
    const auto algo = algo_from_name(args.algo);
    if (!algo) throw std::invalid_argument("unknown algorithm: " + args.algo);
    TrainConfig cfg;
    cfg.rounds = args.rounds;
    cfg.pool_spec = parse_pool_spec(args.thresholds);
    cfg.seed = args.seed;
    cfg.algo = *algo;
    cfg.init = parse_init(args.init);
    cv_cfg = cfg;
  }

  std::string out = provenance(args.seed, args.model_path + "|" + args.data_path);
  out += "cost_pos,cost_neg,gamma,fn,fp,ce,nec\n";
  char buf[64];
  for (const auto& cost : costs) {
    RatePoint r;
    if (model) {
      r = rates(*model, ds, cost);
    } else {
      cv_cfg->cost = cost;
      r = kfold_eval(ds, *cv_cfg, args.folds, args.seed);
    }
    out += std::to_string(cost.c_pos) + ',' + std::to_string(cost.c_neg) + ',';
    out += fmt(buf, sizeof(buf), cost.gamma());
    out += ',';
    out += fmt(buf, sizeof(buf), r.fn_rate);
    out += ',';
    out += fmt(buf, sizeof(buf), r.fp_rate);
    out += ',';
    out += fmt(buf, sizeof(buf), r.ce);
    out += ',';
    out += fmt(buf, sizeof(buf), r.nec);
    out += '\n';
  }
  write_file(args.out_path, out);
  std::printf("wrote %s (%zu costs%s)\n", args.out_path.c_str(), costs.size(),
              model ? "" : ", cross-validated");
  return 0;
}

// ---------------------------------------------------------------------------
// envelope
// ---------------------------------------------------------------------------

struct EnvelopeArgs {
  std::vector<std::string> model_paths;
  std::string data_path;
  std::string label_column = "last";
  std::string positive_label = "1";
  std::size_t grid = 1000;
  std::string bayes_spec_path;    // optional GaussianScenario json
  std::string bayes_points_path;  // raw x,y,label csv for the oracle family
  std::string costs = "paper-grid";
  std::uint64_t seed = 0;
  std::string out_prefix;
};

GaussianScenario scenario_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: invalid json: ") + e.what());
  }
  GaussianScenario sc;
  sc.mean_pos = j.at("mean_pos").get<std::array<double, 2>>();
  sc.mean_neg = j.at("mean_neg").get<std::array<double, 2>>();
  sc.sigma = j.at("sigma").get<double>();
  sc.prior_pos = j.value("prior_pos", 0.5);
  return sc;
}

void write_envelope_csv(const std::string& path, const std::string& head,
                        const std::vector<std::pair<double, double>>& env) {
  std::string out = head;
  out += "pcf,nec\n";
  char buf[64];
  for (const auto& [p, v] : env) {
    out += fmt(buf, sizeof(buf), p);
    out += ',';
    out += fmt(buf, sizeof(buf), v);
    out += '\n';
  }
  write_file(path, out);
}

int run_envelope(const EnvelopeArgs& args) {
  if (args.model_paths.empty()) throw std::invalid_argument("envelope: empty model family");
  const Dataset ds = load_csv(args.data_path, parse_label_column(args.label_column),
                              args.positive_label);
  const std::string head = provenance(args.seed, args.data_path);

  std::vector<CostLine> lines;
  std::string lines_csv = head;
  lines_csv += "model,fp,fn\n";
  char buf[64];
  for (const auto& path : args.model_paths) {
    const CostLine line = cost_line(load_ensemble(path), ds);
    lines.push_back(line);
    lines_csv += std::filesystem::path(path).filename().string();
    lines_csv += ',';
    lines_csv += fmt(buf, sizeof(buf), line.fp_at_0);
    lines_csv += ',';
    lines_csv += fmt(buf, sizeof(buf), line.fn_at_1);
    lines_csv += '\n';
  }
  write_file(args.out_prefix + "_lines.csv", lines_csv);
  write_envelope_csv(args.out_prefix + "_envelope.csv", head,
                     lower_envelope(lines, args.grid));

  if (!args.bayes_spec_path.empty()) {
    if (args.bayes_points_path.empty())
      throw std::invalid_argument("envelope: --bayes-spec needs --bayes-points (x,y,label csv)");
    const GaussianScenario sc = scenario_from_json(read_file(args.bayes_spec_path));
    const Dataset pts = load_csv(args.bayes_points_path, LabelColumn::last(), "1");
    if (pts.dim() != 2)
      throw std::invalid_argument("envelope: bayes points file must have two coordinates");

    std::vector<CostLine> oracle_lines;
    for (const auto& cost : parse_costs(args.costs)) {
      const BayesRule rule = bayes_classifier(sc, cost);
      std::size_t misses = 0, alarms = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const int pred = rule.classify({pts.value(i, 0), pts.value(i, 1)});
        if (pts.label(i) == 1 && pred == -1) ++misses;
        if (pts.label(i) == -1 && pred == 1) ++alarms;
      }
      oracle_lines.push_back(
          CostLine{static_cast<double>(alarms) / static_cast<double>(pts.neg_count()),
                   static_cast<double>(misses) / static_cast<double>(pts.pos_count())});
    }
    write_envelope_csv(args.out_prefix + "_bayes_envelope.csv", head,
                       lower_envelope(oracle_lines, args.grid));
  }
  std::printf("wrote %s_{lines.csv,envelope.csv%s}\n", args.out_prefix.c_str(),
              args.bayes_spec_path.empty() ? "" : ",bayes_envelope.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cost-sensitive boosting with double-base and hyperbolic trainers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset from a json spec");
  gen->add_option("--config", gen_args.config_path, "synthetic spec json")->required();
  gen->add_option("--out", gen_args.out_dir, "output directory")->required();
  gen->add_option("--name", gen_args.name, "output file stem");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train one classifier");
  train->add_option("--data", train_args.data_path, "training csv")->required();
  train->add_option("--label-column", train_args.label_column, "'last' or column index");
  train->add_option("--positive-label", train_args.positive_label, "label value of positives");
  train->add_option("--algo", train_args.algo, "adaboost | cs | db | db_nocs");
  train->add_option("--cp", train_args.cp, "positive-class cost C_P");
  train->add_option("--cn", train_args.cn, "negative-class cost C_N");
  train->add_option("--rounds", train_args.rounds, "boosting rounds")
      ->check(CLI::PositiveNumber);
  train->add_option("--seed", train_args.seed, "seed recorded in reports");
  train->add_option("--thresholds", train_args.thresholds,
                    "'all-midpoints' or thresholds per feature");
  train->add_option("--init", train_args.init, "uniform | class-balanced");
  train->add_option("--out", train_args.out_prefix, "output path prefix")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run the algorithm/cost/dataset benchmark matrix");
  bench->add_option("--config", bench_args.config_path, "bench matrix json")->required();
  bench->add_option("--out", bench_args.out_dir, "output directory")->required();
  bench->add_option("--workers", bench_args.workers, "concurrent cells (default from config)");
  bench->add_flag("--sequential-timing", bench_args.sequential_timing,
                  "force one cell at a time for clean timings");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand(
      "eval", "evaluate a saved ensemble, or cross-validate per cost with --folds");
  eval->add_option("--model", eval_args.model_path, "ensemble json");
  eval->add_option("--data", eval_args.data_path, "test csv")->required();
  eval->add_option("--label-column", eval_args.label_column, "'last' or column index");
  eval->add_option("--positive-label", eval_args.positive_label, "label value of positives");
  eval->add_option("--costs", eval_args.costs, "'paper-grid' or CP:CN,...");
  eval->add_option("--folds", eval_args.folds, "stratified cross-validation folds");
  eval->add_option("--algo", eval_args.algo, "trainer for --folds mode");
  eval->add_option("--rounds", eval_args.rounds, "rounds for --folds mode")
      ->check(CLI::PositiveNumber);
  eval->add_option("--thresholds", eval_args.thresholds, "pool policy for --folds mode");
  eval->add_option("--init", eval_args.init, "initial weights for --folds mode");
  eval->add_option("--seed", eval_args.seed, "seed for fold shuffles and reports");
  eval->add_option("--out", eval_args.out_path, "rates csv path")->required();

  EnvelopeArgs env_args;
  auto* envelope = app.add_subcommand("envelope", "lower envelope of a classifier family");
  envelope->add_option("--models", env_args.model_paths, "ensemble json files")
      ->required()
      ->expected(-1);
  envelope->add_option("--data", env_args.data_path, "test csv")->required();
  envelope->add_option("--label-column", env_args.label_column, "'last' or column index");
  envelope->add_option("--positive-label", env_args.positive_label, "label value of positives");
  envelope->add_option("--grid", env_args.grid, "pcf grid intervals")->check(CLI::PositiveNumber);
  envelope->add_option("--bayes-spec", env_args.bayes_spec_path,
                       "gaussian scenario json for the oracle family");
  envelope->add_option("--bayes-points", env_args.bayes_points_path, "raw x,y,label csv");
  envelope->add_option("--costs", env_args.costs, "oracle cost list");
  envelope->add_option("--seed", env_args.seed, "seed recorded in reports");
  envelope->add_option("--out", env_args.out_prefix, "output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return run_gen(gen_args);
    if (*train) return run_train(train_args);
    if (*bench) return run_bench(bench_args);
    if (*eval) return run_eval(eval_args);
    if (*envelope) return run_envelope(env_args);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
