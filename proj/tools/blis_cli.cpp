// blis: verification battery, counterexample demo, synthetic data, experiments.

#include "blis/counterexamples.hpp"
#include "blis/error.hpp"
#include "blis/experiment.hpp"
#include "blis/testkit.hpp"
#include "blis/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvariantFailure = 1, kUsage = 2, kIo = 3 };

struct Options {
  std::string config;
  std::string frame = "w1";
  int J = -1;
  int m = -1;
  double alpha = -0.5;
  std::uint64_t seed = 0;
  std::string out;

  // verify
  int probes = 100;
  int permutations = 20;
  double corrupt = 1.0;

  // synth
  std::string mode = "different-mu";
  long nodes = 100;
  long k = 5;
  long signals = 400;

  // experiment
  std::string data;
  std::string featurizer = "all";
  std::string frames = "all";
  int replicates = 5;
  int outer_folds = 5;
  int inner_folds = 5;
  int scatter_m = 2;

  // counterexample
  std::string graph = "P20";
};

// Values from --config become defaults; explicit flags override them.
void apply_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw blis::Error(blis::ErrorCode::Io, "cannot read config " + path);
  const json c = json::parse(in);
  auto get = [&](const char* key, auto& field) {
    if (c.contains(key)) field = c.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("frame", o.frame);
  get("J", o.J);
  get("m", o.m);
  get("alpha", o.alpha);
  get("seed", o.seed);
  get("out", o.out);
  get("probes", o.probes);
  get("permutations", o.permutations);
  get("corrupt", o.corrupt);
  get("mode", o.mode);
  get("nodes", o.nodes);
  get("k", o.k);
  get("signals", o.signals);
  get("data", o.data);
  get("featurizer", o.featurizer);
  get("frames", o.frames);
  get("replicates", o.replicates);
  get("outer_folds", o.outer_folds);
  get("inner_folds", o.inner_folds);
  get("scatter_m", o.scatter_m);
  get("graph", o.graph);
}

void write_json(const json& j, const std::string& out, const std::string& name) {
  if (out.empty()) return;
  fs::path target(out);
  if (fs::is_directory(target) || target.extension() != ".json") {
    fs::create_directories(target);
    target /= name;
  }
  std::ofstream os(target);
  if (!os) throw blis::Error(blis::ErrorCode::Io, "cannot write " + target.string());
  os << j.dump(2) << '\n';
}

void check_common(const Options& o) {
  if (o.J < 0) throw blis::Error(blis::ErrorCode::InvalidArgument, "--J must be nonnegative");
  if (o.m < 1) throw blis::Error(blis::ErrorCode::InvalidArgument, "--m must be at least 1");
  if (o.alpha < -0.5 || o.alpha > 0.5) {
    throw blis::Error(blis::ErrorCode::InvalidArgument, "--alpha must lie in [-0.5, 0.5]");
  }
}

int cmd_verify(Options o) {
  if (o.J < 0) o.J = 2;
  if (o.m < 0) o.m = 2;
  check_common(o);
  blis::VerifyConfig cfg;
  cfg.family = blis::parse_frame_family(o.frame);
  cfg.J = o.J;
  cfg.order = o.m;
  cfg.alpha = o.alpha;
  cfg.seed = o.seed;
  cfg.probes = o.probes;
  cfg.permutations = o.permutations;
  cfg.corrupt_factor = o.corrupt;
  const auto report = blis::run_verification(cfg);
  write_json(report.to_json(cfg), o.out, "verify.json");

  for (const auto& c : report.checks) {
    const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    std::printf("%-4s %-7s %-15s %s\n", status, c.graph.c_str(), c.name.c_str(), c.detail.c_str());
  }
  for (const auto& [name, g] : report.graphs.items()) {
    std::printf("%-7s c=%.6g C=%.6g\n", name.c_str(), g["c"].get<double>(), g["C"].get<double>());
  }
  std::printf("verify: %s\n", report.passed() ? "all invariants hold" : "invariant violated");
  return report.passed() ? kOk : kInvariantFailure;
}

int cmd_synth(Options o) {
  if (o.out.empty()) o.out = "data";
  blis::SynthConfig cfg;
  cfg.mode = blis::parse_synth_mode(o.mode);
  cfg.nodes = o.nodes;
  cfg.k = o.k;
  cfg.signals = o.signals;
  cfg.seed = o.seed;
  const auto reps = blis::five_replicates(cfg);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const auto dir = fs::path(o.out) / ("replicate_" + std::to_string(r));
    blis::write_dataset(reps[r], dir);
    std::printf("%s: %zu edges, %ld signals\n", dir.string().c_str(), reps[r].graph.edge_count(),
                static_cast<long>(reps[r].signals.rows()));
  }
  return kOk;
}

std::vector<blis::ExperimentRowSpec> select_rows(const Options& o) {
  std::vector<blis::ExperimentRowSpec> rows;
  for (const auto& spec : blis::all_experiment_rows()) {
    const bool f_ok = o.featurizer == "all" || blis::to_string(spec.featurizer) == o.featurizer ||
                      (o.featurizer == "scattering" && spec.featurizer == blis::Featurizer::Scatter);
    const bool w_ok = o.frames == "all" || spec.family == blis::parse_frame_family(o.frames);
    if (f_ok && w_ok) rows.push_back(spec);
  }
  if (rows.empty()) throw blis::Error(blis::ErrorCode::InvalidArgument, "no experiment rows selected");
  return rows;
}

int cmd_experiment(Options o) {
  if (o.J < 0) o.J = 4;
  if (o.m < 0) o.m = 3;
  check_common(o);
  if (o.out.empty()) o.out = "results";
  if (o.scatter_m < 0) throw blis::Error(blis::ErrorCode::InvalidArgument, "--scatter-m must be nonnegative");

  std::vector<blis::LoadedDataset> data;
  std::string task;
  if (!o.data.empty()) {
    if (!fs::is_directory(o.data)) {
      throw blis::Error(blis::ErrorCode::MissingDataset, o.data + " is not a directory");
    }
    for (int r = 0; r < o.replicates; ++r) {
      const auto dir = fs::path(o.data) / ("replicate_" + std::to_string(r));
      if (!fs::exists(dir)) break;
      data.push_back(blis::read_dataset(dir));
    }
    if (data.empty()) data.push_back(blis::read_dataset(o.data));
    task = data.front().mode;
  } else {
    blis::SynthConfig cfg;
    cfg.mode = blis::parse_synth_mode(o.mode);
    cfg.nodes = o.nodes;
    cfg.k = o.k;
    cfg.signals = o.signals;
    cfg.seed = o.seed;
    auto reps = blis::five_replicates(cfg);
    const auto keep = std::min<std::size_t>(reps.size(), static_cast<std::size_t>(std::max(o.replicates, 1)));
    for (std::size_t r = 0; r < keep; ++r) data.push_back(blis::as_loaded(reps[r]));
    task = o.mode;
  }

  blis::ExperimentConfig cfg;
  cfg.J = o.J;
  cfg.order = o.m;
  cfg.scatter_order = o.scatter_m;
  cfg.alpha = o.alpha;
  cfg.seed = o.seed;
  cfg.cv.outer_folds = o.outer_folds;
  cfg.cv.inner_folds = o.inner_folds;
  cfg.rows = select_rows(o);

  const auto rows = blis::run_experiment(data, cfg);
  fs::create_directories(o.out);
  write_json(blis::experiment_json(rows, cfg, task), (fs::path(o.out) / "results.json").string(), "");
  blis::write_experiment_csv(rows, fs::path(o.out) / "accuracy.csv");

  std::printf("%-18s %8s %8s %9s\n", "model", "mean", "std", "seconds");
  for (const auto& row : rows) {
    std::printf("%-18s %8.2f %8.2f %9.1f\n", blis::row_name(row.spec).c_str(), 100.0 * row.mean,
                100.0 * row.std, row.seconds);
  }
  return kOk;
}

blis::Graph zoo_graph(const std::string& name) {
  if (fs::exists(name)) return blis::read_edge_csv(name);
  for (auto& z : blis::testkit::graph_zoo()) {
    if (z.name == name) return std::move(z.graph);
  }
  throw blis::Error(blis::ErrorCode::InvalidArgument, "unknown graph '" + name + "'");
}

int cmd_counterexample(Options o) {
  if (o.J < 0) o.J = 2;
  if (o.m < 0) o.m = 2;
  check_common(o);
  const auto g = zoo_graph(o.graph);
  const auto op = blis::make_diffusion(g, blis::WeightVector::degree_preset(g, o.alpha));
  const auto scales = blis::dyadic_scales(o.J);
  const auto pair = blis::is_bipartite(g).bipartite ? blis::bipartite_counterexample(g, op, scales)
                                                    : blis::diameter_counterexample(g, op, scales);
  const auto w2 = blis::build_frame(op, scales, blis::FrameFamily::W2, blis::FilterRoute::Powers);
  const auto frame = blis::build_frame(op, scales, blis::parse_frame_family(o.frame));
  const auto dev = blis::verify_scatter_identical(w2, pair, o.m);
  const auto sep = blis::verify_blis_separates(frame, pair, o.m);
  const bool ok = dev.max_deviation < 1e-8 && sep.distance_sq >= sep.lower_bound * (1.0 - 1e-9) &&
                  sep.distance_sq > 0.0;

  json j{{"graph", o.graph},
         {"regime", std::string(blis::to_string(pair.regime))},
         {"x1", std::vector<double>(pair.x1.data(), pair.x1.data() + pair.x1.size())},
         {"x2", std::vector<double>(pair.x2.data(), pair.x2.data() + pair.x2.size())},
         {"scatter_max_deviation", dev.max_deviation},
         {"zeroth_order_raw_deviation", dev.zeroth_raw},
         {"blis_distance_sq", sep.distance_sq},
         {"blis_lower_bound", sep.lower_bound},
         {"blis_upper_bound", sep.upper_bound},
         {"construction_residual", pair.residual},
         {"passed", ok}};
  write_json(j, o.out, "counterexample.json");
  std::printf("%s pair on %s: scattering deviation %.3g, BLIS distance^2 %.6g >= %.6g\n",
              std::string(blis::to_string(pair.regime)).c_str(), o.graph.c_str(), dev.max_deviation,
              sep.distance_sq, sep.lower_bound);
  return ok ? kOk : kInvariantFailure;
}

std::string find_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  }
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    if (const auto cfg = find_config(argc, argv); !cfg.empty()) apply_config(cfg, o);
  } catch (const blis::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: bad config: %s\n", e.what());
    return kUsage;
  }

  CLI::App app{"Bi-Lipschitz scattering on graphs"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "JSON config file; flags override it");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--frame", o.frame, "wavelet family: w1 or w2");
    sub->add_option("--J", o.J, "largest wavelet index");
    sub->add_option("--m", o.m, "order");
    sub->add_option("--alpha", o.alpha, "weight preset exponent, W = D^alpha");
    sub->add_option("--seed", o.seed, "seed");
    sub->add_option("--out", o.out, "output file or directory");
    sub->add_option("--config", o.config, "JSON config file; flags override it");
  };

  auto* verify = app.add_subcommand("verify", "run the invariant battery on the graph zoo");
  common(verify);
  verify->add_option("--probes", o.probes, "random probes per check");
  verify->add_option("--permutations", o.permutations, "random permutations per graph");
  verify->add_option("--corrupt", o.corrupt, "scale filter 0 by this factor (fault injection)");

  auto* synth = app.add_subcommand("synth", "generate five synthetic replicates");
  common(synth);
  synth->add_option("--mode", o.mode, "different-mu or same-mu");
  synth->add_option("--nodes", o.nodes, "nodes per graph");
  synth->add_option("--k", o.k, "nearest neighbours");
  synth->add_option("--signals", o.signals, "signals per replicate");

  auto* experiment = app.add_subcommand("experiment", "cross-validated accuracy table");
  common(experiment);
  experiment->add_option("--data", o.data, "directory written by synth");
  experiment->add_option("--mode", o.mode, "generate in memory when --data is absent");
  experiment->add_option("--nodes", o.nodes, "nodes per graph");
  experiment->add_option("--k", o.k, "nearest neighbours");
  experiment->add_option("--signals", o.signals, "signals per replicate");
  experiment->add_option("--featurizer", o.featurizer, "blis, scatter or all");
  experiment->add_option("--frames", o.frames, "w1, w2 or all");
  experiment->add_option("--replicates", o.replicates, "replicates to use (at most 5)");
  experiment->add_option("--outer-folds", o.outer_folds, "outer 70/30 splits");
  experiment->add_option("--inner-folds", o.inner_folds, "inner folds for hidden-size selection");
  experiment->add_option("--scatter-m", o.scatter_m, "largest scattering order");

  auto* counter = app.add_subcommand("counterexample", "build a scattering-identical pair");
  common(counter);
  counter->add_option("--graph", o.graph, "zoo name (K2, C3, C6, P20, S5, RND100) or edge CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*synth) return cmd_synth(o);
    if (*experiment) return cmd_experiment(o);
    if (*counter) return cmd_counterexample(o);
  } catch (const blis::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(blis::to_string(e.code())).c_str(), e.what());
    switch (e.code()) {
      case blis::ErrorCode::Io:
      case blis::ErrorCode::MissingDataset: return kIo;
      case blis::ErrorCode::KTooLarge:
      case blis::ErrorCode::InvalidArgument:
      case blis::ErrorCode::OrderTooLarge:
      case blis::ErrorCode::DiameterTooSmall:
      case blis::ErrorCode::NotBipartite: return kUsage;
      default: return kInvariantFailure;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  }
  return kUsage;
}
