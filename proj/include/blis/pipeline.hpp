#pragma once

#include "blis/blis.hpp"
#include "blis/random.hpp"
#include "blis/scattering.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blis {

// --- features ---------------------------------------------------------------

enum class Featurizer { Blis, Scatter };
std::string_view to_string(Featurizer f);

/// N x F aggregated features with canonical column names.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> columns;
  Featurizer featurizer = Featurizer::Blis;
  FrameFamily family = FrameFamily::W1;
  int J = 0;
  int order = 0;
};

/// Node sums of the final-layer BLIS coefficients, encode_path order.
Eigen::VectorXd aggregate_first_moment(const BlisCoefficients& coeffs);

/// One row per signal (rows of `signals`).
FeatureMatrix blis_features(const WaveletFrame& frame, const Eigen::Ref<const Eigen::MatrixXd>& signals,
                            int order);
FeatureMatrix scatter_features(const WaveletFrame& frame,
                               const Eigen::Ref<const Eigen::MatrixXd>& signals, int max_order);

void write_features_csv(const FeatureMatrix& features, const std::filesystem::path& csv);

// --- MLP --------------------------------------------------------------------

/// Adam with the usual defaults, L2 penalty alpha / (2 batch) ||W||^2,
/// minibatches of min(200, N), early stop when the epoch loss fails to
/// improve by `tol` for `patience` epochs.
struct MlpConfig {
  std::vector<int> hidden{100};
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double l2 = 0.01;
  int max_epochs = 300;
  int patience = 20;
  double tol = 1e-4;
  int batch_size = 200;
};

/// The hidden-size grid searched during model selection.
std::vector<std::vector<int>> default_hidden_grid();

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;
};

class MlpModel {
 public:
  MlpModel() = default;
  /// Glorot-uniform initialization.
  MlpModel(int inputs, const std::vector<int>& hidden, int classes, Rng& rng);

  int inputs() const;
  int classes() const;
  std::vector<int> layer_sizes() const;
  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& layers() noexcept { return layers_; }

  /// Softmax probabilities, N x classes (rows are samples).
  Eigen::MatrixXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  std::vector<int> predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

  /// Mean cross-entropy plus l2 / (2 N) sum ||W||^2.
  double loss(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y, double l2) const;
  /// Loss and gradients (same layout as layers()).
  double loss_and_gradient(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y,
                           double l2, std::vector<DenseLayer>& grads) const;

  int epochs_trained = 0;

 private:
  std::vector<DenseLayer> layers_;
};

MlpModel train_mlp(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y,
                   const MlpConfig& config, std::uint64_t seed);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

struct GradCheckResult {
  double max_relative_deviation = 0.0;
  int coordinates = 0;
  int excluded_kinks = 0;
};

/// Central differences (step h) on `coordinates` random weight/bias entries.
GradCheckResult finite_diff_gradcheck(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x,
                                      const std::vector<int>& y, double l2, std::uint64_t seed,
                                      int coordinates = 50, double h = 1e-5);

// --- standardization + cross-validation --------------------------------------

/// Column z-scores fitted on a training split; constant columns map to 0.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::Ref<const Eigen::MatrixXd>& x);
  Eigen::MatrixXd transform(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
};

/// Per class, shuffles and takes round(test_fraction * class size) for test.
std::pair<std::vector<Index>, std::vector<Index>> stratified_split(const std::vector<int>& labels,
                                                                   double test_fraction, Rng& rng);

/// Fold id per sample; each class is dealt round-robin after shuffling.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, Rng& rng);

struct CvConfig {
  int outer_folds = 5;
  double test_fraction = 0.3;
  int inner_folds = 5;
  std::vector<std::vector<int>> hidden_grid = default_hidden_grid();
  MlpConfig mlp;
  bool standardize = true;
};

struct CvResult {
  std::vector<double> fold_accuracies;
  std::vector<std::vector<int>> chosen_hidden;
  double mean = 0.0;
  double std = 0.0;
};

CvResult cross_validate(const Eigen::Ref<const Eigen::MatrixXd>& features, const std::vector<int>& labels,
                        const CvConfig& config, std::uint64_t seed);

std::string hidden_to_string(const std::vector<int>& hidden);

}  // namespace blis
