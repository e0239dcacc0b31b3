#pragma once

#include "blis/graph.hpp"
#include "blis/random.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace blis {

enum class SynthMode { DifferentMu, SameMu };
std::string_view to_string(SynthMode mode);
SynthMode parse_synth_mode(std::string_view text);

/// Lower end of the bandwidth draw. Bandwidths near zero give signals that
/// vanish at every node.
inline constexpr double kSigmaMin = 0.05;

struct GaussianParams {
  Point2 mu1{};
  Point2 mu2{};
  double sigma1 = 1.0;
  double sigma2 = 1.0;
};

/// exp(-||p - mu||^2 / (2 sigma^2)) at every point.
Eigen::VectorXd gaussian_bump(std::span<const Point2> points, const Point2& mu, double sigma);

/// Draws parameters for one signal under the mode's rule.
GaussianParams draw_params(SynthMode mode, Rng& rng);

struct SynthConfig {
  SynthMode mode = SynthMode::DifferentMu;
  Index nodes = 100;
  Index k = 5;
  Index signals = 400;
  std::uint64_t seed = 0;
};

struct SignalDataset {
  Graph graph;
  std::vector<Point2> points;
  Eigen::MatrixXd signals;  // N x n
  std::vector<int> labels;  // 0: g1 + g2, 1: g1 - g2
  std::vector<GaussianParams> params;
  SynthConfig config;
  int graph_attempts = 1;
};

/// One kNN graph on uniform points (resampled up to 20 times until
/// connected), then N/2 signals per class with independent draws.
SignalDataset generate_dataset(const SynthConfig& config);

/// Five datasets with seeds base_seed + r.
std::vector<SignalDataset> five_replicates(SynthConfig config);

/// graph.csv, graph.json, points.csv, signals.csv, labels.csv, meta.json.
void write_dataset(const SignalDataset& data, const std::filesystem::path& dir);

struct LoadedDataset {
  Graph graph;
  Eigen::MatrixXd signals;
  std::vector<int> labels;
  std::string mode;
};

LoadedDataset read_dataset(const std::filesystem::path& dir);

}  // namespace blis
