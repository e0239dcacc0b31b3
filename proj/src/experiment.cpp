#include "blis/experiment.hpp"

#include "blis/error.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace blis {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t row_key(const ExperimentRowSpec& spec) {
  return (spec.featurizer == Featurizer::Blis ? 2u : 0u) + (spec.family == FrameFamily::W2 ? 1u : 0u);
}

}  // namespace

std::vector<ExperimentRowSpec> all_experiment_rows() {
  return {{Featurizer::Scatter, FrameFamily::W1},
          {Featurizer::Scatter, FrameFamily::W2},
          {Featurizer::Blis, FrameFamily::W1},
          {Featurizer::Blis, FrameFamily::W2}};
}

std::string row_name(const ExperimentRowSpec& spec) {
  return std::string(spec.featurizer == Featurizer::Blis ? "BLIS-Net" : "Scattering") + " (" +
         std::string(to_string(spec.family)) + ")";
}

LoadedDataset as_loaded(const SignalDataset& data) {
  return LoadedDataset{data.graph, data.signals, data.labels, std::string(to_string(data.config.mode))};
}

FeatureMatrix featurize(const LoadedDataset& data, const ExperimentRowSpec& spec, int J, int order,
                        double alpha) {
  const auto op = make_diffusion(data.graph, WeightVector::degree_preset(data.graph, alpha));
  const auto frame = build_frame(op, dyadic_scales(J), spec.family);
  return spec.featurizer == Featurizer::Blis ? blis_features(frame, data.signals, order)
                                             : scatter_features(frame, data.signals, order);
}

std::vector<ExperimentRow> run_experiment(const std::vector<LoadedDataset>& replicates,
                                          const ExperimentConfig& config) {
  if (replicates.empty()) throw Error(ErrorCode::MissingDataset, "no replicates to run");
  std::vector<ExperimentRow> rows;
  for (std::size_t s = 0; s < config.rows.size(); ++s) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentRow row{config.rows[s], {}, 0.0, 0.0, 0.0};
    for (std::size_t r = 0; r < replicates.size(); ++r) {
      ReplicateResult rep;
      const auto t0 = std::chrono::steady_clock::now();
      const auto features = featurize(replicates[r], row.spec, config.J,
                                      row.spec.featurizer == Featurizer::Blis ? config.order : config.scatter_order,
                                      config.alpha);
      rep.feature_seconds = seconds_since(t0);
      const auto t1 = std::chrono::steady_clock::now();
      rep.cv = cross_validate(features.values, replicates[r].labels, config.cv,
                              derive_seed(config.seed, r * 16 + row_key(row.spec)));
      rep.train_seconds = seconds_since(t1);
      row.replicates.push_back(std::move(rep));
    }
    const auto k = static_cast<double>(row.replicates.size());
    for (const auto& rep : row.replicates) row.mean += rep.cv.mean / k;
    for (const auto& rep : row.replicates) row.std += (rep.cv.mean - row.mean) * (rep.cv.mean - row.mean) / k;
    row.std = std::sqrt(row.std);
    row.seconds = seconds_since(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json experiment_json(const std::vector<ExperimentRow>& rows, const ExperimentConfig& config,
                               const std::string& task) {
  nlohmann::json out;
  out["task"] = task;
  out["J"] = config.J;
  out["m"] = config.order;
  out["scatter_order"] = config.scatter_order;
  out["alpha"] = config.alpha;
  out["seed"] = config.seed;
  out["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["task"] = task;
    j["name"] = row_name(row.spec);
    j["featurizer"] = std::string(to_string(row.spec.featurizer));
    j["frame"] = std::string(to_string(row.spec.family));
    j["J"] = config.J;
    j["m"] = row.spec.featurizer == Featurizer::Blis ? config.order : config.scatter_order;
    j["mean"] = row.mean;
    j["std"] = row.std;
    j["seconds"] = row.seconds;
    j["replicates"] = nlohmann::json::array();
    for (const auto& rep : row.replicates) {
      nlohmann::json hidden = nlohmann::json::array();
      for (const auto& h : rep.cv.chosen_hidden) hidden.push_back(hidden_to_string(h));
      j["replicates"].push_back({{"folds", rep.cv.fold_accuracies},
                                 {"mean", rep.cv.mean},
                                 {"std", rep.cv.std},
                                 {"chosen_hidden", hidden},
                                 {"feature_seconds", rep.feature_seconds},
                                 {"train_seconds", rep.train_seconds}});
    }
    out["rows"].push_back(std::move(j));
  }
  return out;
}

void write_experiment_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& csv) {
  std::ofstream os(csv);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + csv.string());
  os << "model,featurizer,frame,mean_accuracy,std_accuracy\n" << std::fixed << std::setprecision(2);
  for (const auto& row : rows) {
    os << row_name(row.spec) << ',' << to_string(row.spec.featurizer) << ',' << to_string(row.spec.family) << ','
       << 100.0 * row.mean << ',' << 100.0 * row.std << '\n';
  }
}

}  // namespace blis
