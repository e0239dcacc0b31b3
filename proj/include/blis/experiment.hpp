#pragma once

#include "blis/pipeline.hpp"
#include "blis/synthdata.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace blis {

struct ExperimentRowSpec {
  Featurizer featurizer = Featurizer::Blis;
  FrameFamily family = FrameFamily::W1;
};

/// Scattering and BLIS-Net, each with W1 and W2.
std::vector<ExperimentRowSpec> all_experiment_rows();

struct ExperimentConfig {
  int J = 4;
  int order = 3;
  /// Scattering rows use orders 0..scatter_order.
  int scatter_order = 2;
  double alpha = -0.5;
  std::uint64_t seed = 0;
  CvConfig cv;
  std::vector<ExperimentRowSpec> rows = all_experiment_rows();
};

struct ReplicateResult {
  CvResult cv;
  double feature_seconds = 0.0;
  double train_seconds = 0.0;
};

struct ExperimentRow {
  ExperimentRowSpec spec;
  std::vector<ReplicateResult> replicates;
  /// Mean and population std of the per-replicate mean accuracies.
  double mean = 0.0;
  double std = 0.0;
  double seconds = 0.0;
};

/// "BLIS-Net (W1)", "Scattering (W2)", ...
std::string row_name(const ExperimentRowSpec& spec);

LoadedDataset as_loaded(const SignalDataset& data);

/// `order` is the BLIS depth or the largest scattering order, depending on the row.
FeatureMatrix featurize(const LoadedDataset& data, const ExperimentRowSpec& spec, int J, int order,
                        double alpha);

std::vector<ExperimentRow> run_experiment(const std::vector<LoadedDataset>& replicates,
                                          const ExperimentConfig& config);

nlohmann::json experiment_json(const std::vector<ExperimentRow>& rows, const ExperimentConfig& config,
                               const std::string& task);
void write_experiment_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& csv);

}  // namespace blis
