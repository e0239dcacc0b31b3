#include "blis/synthdata.hpp"

#include "blis/error.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace blis {

namespace fs = std::filesystem;

std::string_view to_string(SynthMode mode) {
  return mode == SynthMode::DifferentMu ? "different-mu" : "same-mu";
}

SynthMode parse_synth_mode(std::string_view text) {
  if (text == "different-mu" || text == "different_mu" || text == "diff-mu") return SynthMode::DifferentMu;
  if (text == "same-mu" || text == "same_mu") return SynthMode::SameMu;
  throw Error(ErrorCode::InvalidArgument, "unknown synthetic mode '" + std::string(text) + "'");
}

Eigen::VectorXd gaussian_bump(std::span<const Point2> points, const Point2& mu, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  Eigen::VectorXd out(static_cast<Index>(points.size()));
  const double denom = 2.0 * sigma * sigma;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i][0] - mu[0];
    const double dy = points[i][1] - mu[1];
    out(static_cast<Index>(i)) = std::exp(-(dx * dx + dy * dy) / denom);
  }
  return out;
}

GaussianParams draw_params(SynthMode mode, Rng& rng) {
  GaussianParams p;
  p.mu1 = {uniform01(rng), uniform01(rng)};
  if (mode == SynthMode::DifferentMu) {
    p.mu2 = {uniform01(rng), uniform01(rng)};
    p.sigma1 = uniform(rng, kSigmaMin, 1.0);
    p.sigma2 = p.sigma1;
  } else {
    p.mu2 = p.mu1;
    p.sigma1 = uniform(rng, kSigmaMin, 1.0);
    p.sigma2 = p.sigma1 / 2.0;
  }
  return p;
}

SignalDataset generate_dataset(const SynthConfig& config) {
  if (config.signals <= 0 || config.signals % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "signal count must be positive and even");
  }
  if (config.k >= config.nodes) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(config.k) + " with " +
                                          std::to_string(config.nodes) + " nodes");
  }

  Rng rng(config.seed);
  constexpr int kMaxAttempts = 20;
  std::optional<Graph> graph;
  std::vector<Point2> points;
  int attempt = 0;
  while (!graph && attempt < kMaxAttempts) {
    ++attempt;
    points.assign(static_cast<std::size_t>(config.nodes), Point2{});
    for (auto& p : points) p = {uniform01(rng), uniform01(rng)};
    try {
      graph = knn_graph(points, config.k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DisconnectedGraph && e.code() != ErrorCode::DuplicatePoints) throw;
    }
  }
  if (!graph) {
    throw Error(ErrorCode::GraphDisconnected,
                "no connected kNN graph after " + std::to_string(kMaxAttempts) + " draws");
  }

  SignalDataset data{std::move(*graph), std::move(points), {}, {}, {}, config, attempt};
  data.signals.resize(config.signals, config.nodes);
  data.labels.reserve(static_cast<std::size_t>(config.signals));
  data.params.reserve(static_cast<std::size_t>(config.signals));
  for (Index i = 0; i < config.signals; ++i) {
    const int label = i < config.signals / 2 ? 0 : 1;
    const auto p = draw_params(config.mode, rng);
    const Eigen::VectorXd g1 = gaussian_bump(data.points, p.mu1, p.sigma1);
    const Eigen::VectorXd g2 = gaussian_bump(data.points, p.mu2, p.sigma2);
    data.signals.row(i) = (label == 0 ? Eigen::VectorXd(g1 + g2) : Eigen::VectorXd(g1 - g2)).transpose();
    data.labels.push_back(label);
    data.params.push_back(p);
  }
  return data;
}

std::vector<SignalDataset> five_replicates(SynthConfig config) {
  std::vector<SignalDataset> out;
  const auto base = config.seed;
  for (std::uint64_t r = 0; r < 5; ++r) {
    config.seed = base + r;
    out.push_back(generate_dataset(config));
  }
  return out;
}

void write_dataset(const SignalDataset& data, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());

  write_edge_csv(data.graph, dir / "graph.csv", dir / "graph.json");
  write_points_csv(data.points, dir / "points.csv");

  std::ofstream sig(dir / "signals.csv");
  if (!sig) throw Error(ErrorCode::Io, "cannot write signals.csv");
  sig << std::setprecision(17);
  for (Index j = 0; j < data.signals.cols(); ++j) sig << (j ? "," : "") << 'v' << j;
  sig << '\n';
  for (Index i = 0; i < data.signals.rows(); ++i) {
    for (Index j = 0; j < data.signals.cols(); ++j) sig << (j ? "," : "") << data.signals(i, j);
    sig << '\n';
  }

  std::ofstream lab(dir / "labels.csv");
  lab << "label\n";
  for (int l : data.labels) lab << l << '\n';

  std::ofstream par(dir / "params.csv");
  par << std::setprecision(17) << "mu1_x,mu1_y,mu2_x,mu2_y,sigma1,sigma2\n";
  for (const auto& p : data.params) {
    par << p.mu1[0] << ',' << p.mu1[1] << ',' << p.mu2[0] << ',' << p.mu2[1] << ',' << p.sigma1 << ','
        << p.sigma2 << '\n';
  }

  nlohmann::json meta{
      {"mode", std::string(to_string(data.config.mode))},
      {"seed", data.config.seed},
      {"nodes", data.config.nodes},
      {"k", data.config.k},
      {"signals", data.config.signals},
      {"edge_count", data.graph.edge_count()},
      {"graph_attempts", data.graph_attempts},
      {"sigma_min", kSigmaMin},
      {"prng", kRngName},
  };
  std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';
}

LoadedDataset read_dataset(const fs::path& dir) {
  for (const char* name : {"graph.csv", "signals.csv", "labels.csv"}) {
    if (!fs::exists(dir / name)) {
      throw Error(ErrorCode::MissingDataset, (dir / name).string() + " not found");
    }
  }
  LoadedDataset out{read_edge_csv(dir / "graph.csv", dir / "graph.json"), {}, {}, ""};

  std::ifstream sig(dir / "signals.csv");
  std::string line;
  std::getline(sig, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(sig, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    if (static_cast<Index>(row.size()) != out.graph.size()) {
      throw Error(ErrorCode::Io, "signals.csv row has " + std::to_string(row.size()) + " entries");
    }
    rows.push_back(std::move(row));
  }
  out.signals.resize(static_cast<Index>(rows.size()), out.graph.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out.signals(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }

  std::ifstream lab(dir / "labels.csv");
  std::getline(lab, line);
  while (std::getline(lab, line)) {
    if (!line.empty()) out.labels.push_back(std::stoi(line));
  }
  if (out.labels.size() != rows.size()) {
    throw Error(ErrorCode::Io, "labels.csv and signals.csv disagree on the signal count");
  }
  if (fs::exists(dir / "meta.json")) {
    std::ifstream meta(dir / "meta.json");
    out.mode = nlohmann::json::parse(meta).value("mode", "");
  }
  return out;
}

}  // namespace blis
