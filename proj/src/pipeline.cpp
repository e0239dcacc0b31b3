#include "blis/pipeline.hpp"

#include "blis/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace blis {

namespace fs = std::filesystem;

std::string_view to_string(Featurizer f) { return f == Featurizer::Blis ? "blis" : "scatter"; }

// --- features ---------------------------------------------------------------

Eigen::VectorXd aggregate_first_moment(const BlisCoefficients& coeffs) {
  return coeffs.values.colwise().sum().transpose();
}

FeatureMatrix blis_features(const WaveletFrame& frame, const Eigen::Ref<const Eigen::MatrixXd>& signals,
                            int order) {
  if (signals.cols() != frame.size()) {
    throw Error(ErrorCode::LengthMismatch, "signals have " + std::to_string(signals.cols()) +
                                               " columns, frame has " + std::to_string(frame.size()) +
                                               " nodes");
  }
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "BLIS order must be at least 1");
  if (order > kDefaultMaxOrder) {
    throw Error(ErrorCode::OrderTooLarge, "order " + std::to_string(order) + " exceeds cap");
  }
  const int J = frame.J();
  const auto paths = static_cast<Index>(blis_path_count(J, order));

  FeatureMatrix out;
  out.featurizer = Featurizer::Blis;
  out.family = frame.family();
  out.J = J;
  out.order = order;
  out.values.resize(signals.rows(), paths);
  out.columns.reserve(static_cast<std::size_t>(paths));
  for (Index p = 0; p < paths; ++p) {
    out.columns.push_back(blis_label(decode_path(static_cast<std::size_t>(p), order, J)));
  }

  // Batches of signals keep the n x (batch * paths) intermediate small.
  constexpr Index kBatch = 32;
  for (Index start = 0; start < signals.rows(); start += kBatch) {
    const Index count = std::min(kBatch, signals.rows() - start);
    Eigen::MatrixXd level = signals.middleRows(start, count).transpose();
    for (int m = 0; m < order; ++m) level = blis_layer(frame, level);
    const Eigen::RowVectorXd sums = level.colwise().sum();
    for (Index i = 0; i < count; ++i) out.values.row(start + i) = sums.segment(i * paths, paths);
  }
  return out;
}

FeatureMatrix scatter_features(const WaveletFrame& frame,
                               const Eigen::Ref<const Eigen::MatrixXd>& signals, int max_order) {
  if (signals.cols() != frame.size()) {
    throw Error(ErrorCode::LengthMismatch, "signals do not match the frame size");
  }
  FeatureMatrix out;
  out.featurizer = Featurizer::Scatter;
  out.family = frame.family();
  out.J = frame.J();
  out.order = max_order;
  const auto paths = scatter_paths(frame.J(), max_order);
  for (const auto& p : paths) out.columns.push_back(scatter_label(p));
  out.values.resize(signals.rows(), static_cast<Index>(paths.size()));
  for (Index i = 0; i < signals.rows(); ++i) {
    const Eigen::VectorXd x = signals.row(i).transpose();
    out.values.row(i) = scatter_aggregate(scatter_all(frame, x, max_order)).transpose();
  }
  return out;
}

void write_features_csv(const FeatureMatrix& features, const fs::path& csv) {
  std::ofstream os(csv);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + csv.string());
  os << std::setprecision(17);
  for (std::size_t c = 0; c < features.columns.size(); ++c) os << (c ? "," : "") << features.columns[c];
  os << '\n';
  for (Index i = 0; i < features.values.rows(); ++i) {
    for (Index j = 0; j < features.values.cols(); ++j) os << (j ? "," : "") << features.values(i, j);
    os << '\n';
  }
}

// --- MLP --------------------------------------------------------------------

std::vector<std::vector<int>> default_hidden_grid() { return {{50}, {100}, {50, 50}, {150, 50}}; }

std::string hidden_to_string(const std::vector<int>& hidden) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < hidden.size(); ++i) os << (i ? "," : "") << hidden[i];
  os << ')';
  return os.str();
}

namespace {

int class_count(const std::vector<int>& y) {
  std::set<int> distinct(y.begin(), y.end());
  if (distinct.size() < 2) throw Error(ErrorCode::DegenerateLabels, "need at least two classes");
  if (*distinct.begin() < 0) throw Error(ErrorCode::InvalidArgument, "labels must be nonnegative");
  return *distinct.rbegin() + 1;
}

void softmax_columns(Eigen::MatrixXd& z) {
  for (Index c = 0; c < z.cols(); ++c) {
    auto col = z.col(c);
    col.array() -= col.maxCoeff();
    col = col.array().exp().matrix();
    col /= col.sum();
  }
}

// Inputs are features x samples. act[l] is the input of layer l + 1; pre[l] is
// layer l's pre-activation.
struct Forward {
  std::vector<Eigen::MatrixXd> act;
  std::vector<Eigen::MatrixXd> pre;
};

Forward forward(const std::vector<DenseLayer>& layers, const Eigen::Ref<const Eigen::MatrixXd>& xt) {
  Forward f;
  f.act.reserve(layers.size());
  f.pre.reserve(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = l == 0 ? Eigen::MatrixXd(layers[0].weights * xt) : Eigen::MatrixXd(layers[l].weights * f.act.back());
    z.colwise() += layers[l].bias;
    f.pre.push_back(z);
    if (l + 1 < layers.size()) {
      f.act.emplace_back(z.cwiseMax(0.0));
    } else {
      softmax_columns(z);
      f.act.push_back(std::move(z));
    }
  }
  return f;
}

double penalty(const std::vector<DenseLayer>& layers, double l2, Index n) {
  double sq = 0.0;
  for (const auto& layer : layers) sq += layer.weights.squaredNorm();
  return l2 * sq / (2.0 * static_cast<double>(n));
}

double loss_and_gradient_t(const std::vector<DenseLayer>& layers, const Eigen::Ref<const Eigen::MatrixXd>& xt,
                           const std::vector<int>& y, double l2, std::vector<DenseLayer>& grads);

double cross_entropy(const Eigen::MatrixXd& proba, const std::vector<int>& y) {
  double total = 0.0;
  for (Index i = 0; i < proba.cols(); ++i) {
    total -= std::log(std::max(proba(y[static_cast<std::size_t>(i)], i), 1e-300));
  }
  return total / static_cast<double>(proba.cols());
}

void check_xy(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y) {
  if (x.cols() != model.inputs()) {
    throw Error(ErrorCode::DimMismatch, "model expects " + std::to_string(model.inputs()) + " features, got " +
                                            std::to_string(x.cols()));
  }
  if (static_cast<Index>(y.size()) != x.rows()) {
    throw Error(ErrorCode::LengthMismatch, "feature rows and labels differ");
  }
  for (int label : y) {
    if (label < 0 || label >= model.classes()) {
      throw Error(ErrorCode::InvalidArgument, "label " + std::to_string(label) + " out of range");
    }
  }
}

}  // namespace

MlpModel::MlpModel(int inputs, const std::vector<int>& hidden, int classes, Rng& rng) {
  if (inputs < 1 || classes < 2) throw Error(ErrorCode::InvalidArgument, "bad MLP shape");
  std::vector<int> sizes{inputs};
  for (int h : hidden) {
    if (h < 1) throw Error(ErrorCode::InvalidArgument, "hidden sizes must be positive");
    sizes.push_back(h);
  }
  sizes.push_back(classes);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int fan_in = sizes[l];
    const int fan_out = sizes[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    DenseLayer layer{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd(fan_out)};
    for (Index i = 0; i < layer.weights.size(); ++i) layer.weights.data()[i] = uniform(rng, -bound, bound);
    for (Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = uniform(rng, -bound, bound);
    layers_.push_back(std::move(layer));
  }
}

int MlpModel::inputs() const { return layers_.empty() ? 0 : static_cast<int>(layers_.front().weights.cols()); }

int MlpModel::classes() const { return layers_.empty() ? 0 : static_cast<int>(layers_.back().weights.rows()); }

std::vector<int> MlpModel::layer_sizes() const {
  std::vector<int> sizes;
  if (layers_.empty()) return sizes;
  sizes.push_back(inputs());
  for (const auto& layer : layers_) sizes.push_back(static_cast<int>(layer.weights.rows()));
  return sizes;
}

Eigen::MatrixXd MlpModel::predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (x.cols() != inputs()) throw Error(ErrorCode::DimMismatch, "predict_proba: feature count mismatch");
  const Eigen::MatrixXd xt = x.transpose();
  return forward(layers_, xt).act.back().transpose();
}

std::vector<int> MlpModel::predict(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  const Eigen::MatrixXd proba = predict_proba(x);
  std::vector<int> out(static_cast<std::size_t>(proba.rows()));
  for (Index i = 0; i < proba.rows(); ++i) {
    Index best = 0;
    proba.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

double MlpModel::loss(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y, double l2) const {
  check_xy(*this, x, y);
  const Eigen::MatrixXd xt = x.transpose();
  const auto f = forward(layers_, xt);
  return cross_entropy(f.act.back(), y) + penalty(layers_, l2, x.rows());
}

double MlpModel::loss_and_gradient(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y,
                                   double l2, std::vector<DenseLayer>& grads) const {
  check_xy(*this, x, y);
  const Eigen::MatrixXd xt = x.transpose();
  return loss_and_gradient_t(layers_, xt, y, l2, grads);
}

namespace {

double loss_and_gradient_t(const std::vector<DenseLayer>& layers, const Eigen::Ref<const Eigen::MatrixXd>& xt,
                           const std::vector<int>& y, double l2, std::vector<DenseLayer>& grads) {
  const auto f = forward(layers, xt);
  const auto n = static_cast<double>(xt.cols());

  Eigen::MatrixXd delta = f.act.back();
  for (Index i = 0; i < delta.cols(); ++i) delta(y[static_cast<std::size_t>(i)], i) -= 1.0;
  delta /= n;

  grads.resize(layers.size());
  for (std::size_t l = layers.size(); l-- > 0;) {
    if (l == 0) {
      grads[l].weights.noalias() = delta * xt.transpose();
    } else {
      grads[l].weights.noalias() = delta * f.act[l - 1].transpose();
    }
    grads[l].weights += (l2 / n) * layers[l].weights;
    grads[l].bias = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = layers[l].weights.transpose() * delta;
      delta = (f.pre[l - 1].array() > 0.0).select(back, 0.0);
    }
  }
  return cross_entropy(f.act.back(), y) + penalty(layers, l2, xt.cols());
}

}  // namespace

MlpModel train_mlp(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<int>& y,
                   const MlpConfig& config, std::uint64_t seed) {
  if (static_cast<Index>(y.size()) != x.rows()) {
    throw Error(ErrorCode::LengthMismatch, "feature rows and labels differ");
  }
  if (!x.allFinite()) throw Error(ErrorCode::InvalidArgument, "features must be finite");
  const int classes = class_count(y);

  Rng rng(seed);
  MlpModel model(static_cast<int>(x.cols()), config.hidden, classes, rng);
  auto& layers = model.layers();

  std::vector<DenseLayer> m1(layers.size());
  std::vector<DenseLayer> m2(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    m1[l] = {Eigen::MatrixXd::Zero(layers[l].weights.rows(), layers[l].weights.cols()),
             Eigen::VectorXd::Zero(layers[l].bias.size())};
    m2[l] = m1[l];
  }

  const Index n = x.rows();
  const Index batch = std::clamp<Index>(config.batch_size, 1, n);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});

  std::vector<DenseLayer> grads;
  const Eigen::MatrixXd xt = x.transpose();
  Eigen::MatrixXd xb;
  std::vector<int> yb;
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  long step = 0;
  int epoch = 0;
  for (; epoch < config.max_epochs; ++epoch) {
    shuffle(order, rng);
    double epoch_loss = 0.0;
    for (Index start = 0; start < n; start += batch) {
      const Index count = std::min(batch, n - start);
      xb.resize(x.cols(), count);
      yb.resize(static_cast<std::size_t>(count));
      for (Index i = 0; i < count; ++i) {
        const Index src = order[static_cast<std::size_t>(start + i)];
        xb.col(i) = xt.col(src);
        yb[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(src)];
      }
      epoch_loss += loss_and_gradient_t(layers, xb, yb, config.l2, grads) * static_cast<double>(count);

      ++step;
      const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
      const double lr = config.learning_rate * std::sqrt(c2) / c1;
      for (std::size_t l = 0; l < layers.size(); ++l) {
        m1[l].weights = config.beta1 * m1[l].weights + (1.0 - config.beta1) * grads[l].weights;
        m2[l].weights = config.beta2 * m2[l].weights + (1.0 - config.beta2) * grads[l].weights.cwiseAbs2();
        layers[l].weights.array() -= lr * m1[l].weights.array() / (m2[l].weights.array().sqrt() + config.epsilon);
        m1[l].bias = config.beta1 * m1[l].bias + (1.0 - config.beta1) * grads[l].bias;
        m2[l].bias = config.beta2 * m2[l].bias + (1.0 - config.beta2) * grads[l].bias.cwiseAbs2();
        layers[l].bias.array() -= lr * m1[l].bias.array() / (m2[l].bias.array().sqrt() + config.epsilon);
      }
    }
    epoch_loss /= static_cast<double>(n);
    if (epoch_loss > best - config.tol) {
      if (++stale >= config.patience) {
        ++epoch;
        break;
      }
    } else {
      stale = 0;
    }
    best = std::min(best, epoch_loss);
  }
  model.epochs_trained = epoch;
  return model;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "accuracy");
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

GradCheckResult finite_diff_gradcheck(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x,
                                      const std::vector<int>& y, double l2, std::uint64_t seed,
                                      int coordinates, double h) {
  std::vector<DenseLayer> grads;
  model.loss_and_gradient(x, y, l2, grads);

  // Flat view: per layer, weights then bias.
  std::size_t total = 0;
  for (const auto& layer : model.layers()) total += static_cast<std::size_t>(layer.weights.size() + layer.bias.size());
  Rng rng(seed);
  GradCheckResult result;
  MlpModel probe = model;
  const Eigen::MatrixXd xt = x.transpose();
  const int budget = coordinates * 20;
  for (int attempt = 0; attempt < budget && result.coordinates < coordinates; ++attempt) {
    auto flat = static_cast<Index>(uniform_index(rng, total));
    std::size_t l = 0;
    while (flat >= model.layers()[l].weights.size() + model.layers()[l].bias.size()) {
      flat -= model.layers()[l].weights.size() + model.layers()[l].bias.size();
      ++l;
    }
    const Index wsize = model.layers()[l].weights.size();
    auto param = [&](MlpModel& m) -> double& {
      auto& layer = m.layers()[l];
      return flat < wsize ? layer.weights.data()[flat] : layer.bias(flat - wsize);
    };
    const double analytic = flat < wsize ? grads[l].weights.data()[flat] : grads[l].bias(flat - wsize);
    const double base = param(probe);

    param(probe) = base + h;
    const auto fp = forward(probe.layers(), xt);
    const double lp = cross_entropy(fp.act.back(), y) + penalty(probe.layers(), l2, x.rows());
    param(probe) = base - h;
    const auto fm = forward(probe.layers(), xt);
    const double lm = cross_entropy(fm.act.back(), y) + penalty(probe.layers(), l2, x.rows());
    param(probe) = base;

    // A ReLU pre-activation changing sign inside [-h, h] makes the difference quotient meaningless.
    bool kink = false;
    for (std::size_t k = 0; k + 1 < fp.pre.size() && !kink; ++k) {
      kink = ((fp.pre[k].array() > 0.0) != (fm.pre[k].array() > 0.0)).any();
    }
    if (kink) {
      ++result.excluded_kinks;
      continue;
    }
    const double numeric = (lp - lm) / (2.0 * h);
    const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    const double diff = std::abs(analytic - numeric);
    result.max_relative_deviation = std::max(result.max_relative_deviation, diff == 0.0 ? 0.0 : diff / scale);
    ++result.coordinates;
  }
  return result;
}

// --- standardization + cross-validation --------------------------------------

Standardizer Standardizer::fit(const Eigen::Ref<const Eigen::MatrixXd>& x) {
  Standardizer s;
  const auto n = static_cast<double>(std::max<Index>(x.rows(), 1));
  s.mean = x.colwise().mean();
  s.scale = ((x.rowwise() - s.mean).array().square().colwise().sum() / n).sqrt().matrix();
  for (Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 1e-12 * std::max(1.0, std::abs(s.mean(j))))) s.scale(j) = 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::transform(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (x.cols() != mean.size()) throw Error(ErrorCode::DimMismatch, "standardizer column count");
  Eigen::MatrixXd out = (x.rowwise() - mean).array().rowwise() / scale.array();
  for (Index j = 0; j < scale.size(); ++j) {
    if (scale(j) == 1.0 && (x.col(j).array() == mean(j)).all()) out.col(j).setZero();
  }
  return out;
}

namespace {

std::vector<std::vector<Index>> by_class(const std::vector<int>& labels) {
  std::vector<std::vector<Index>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw Error(ErrorCode::InvalidArgument, "labels must be nonnegative");
    const auto c = static_cast<std::size_t>(labels[i]);
    if (groups.size() <= c) groups.resize(c + 1);
    groups[c].push_back(static_cast<Index>(i));
  }
  return groups;
}

Eigen::MatrixXd take_rows(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<Index>& rows) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = x.row(rows[i]);
  return out;
}

std::vector<int> take(const std::vector<int>& v, const std::vector<Index>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (Index r : rows) out.push_back(v[static_cast<std::size_t>(r)]);
  return out;
}

double fit_and_score(const Eigen::MatrixXd& xtr, const std::vector<int>& ytr, const Eigen::MatrixXd& xte,
                     const std::vector<int>& yte, const CvConfig& config, const std::vector<int>& hidden,
                     std::uint64_t seed) {
  MlpConfig mlp = config.mlp;
  mlp.hidden = hidden;
  if (config.standardize) {
    const auto scaler = Standardizer::fit(xtr);
    const auto model = train_mlp(scaler.transform(xtr), ytr, mlp, seed);
    return accuracy(model.predict(scaler.transform(xte)), yte);
  }
  const auto model = train_mlp(xtr, ytr, mlp, seed);
  return accuracy(model.predict(xte), yte);
}

}  // namespace

std::pair<std::vector<Index>, std::vector<Index>> stratified_split(const std::vector<int>& labels,
                                                                   double test_fraction, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "test fraction must lie in (0, 1)");
  }
  std::vector<Index> train;
  std::vector<Index> test;
  for (auto& group : by_class(labels)) {
    shuffle(group, rng);
    const auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(group.size())));
    test.insert(test.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(n_test));
    train.insert(train.end(), group.begin() + static_cast<std::ptrdiff_t>(n_test), group.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, Rng& rng) {
  if (folds < 2) throw Error(ErrorCode::InvalidArgument, "need at least two folds");
  std::vector<int> fold(labels.size(), 0);
  std::size_t dealt = 0;
  for (auto& group : by_class(labels)) {
    shuffle(group, rng);
    for (Index i : group) fold[static_cast<std::size_t>(i)] = static_cast<int>(dealt++ % static_cast<std::size_t>(folds));
  }
  return fold;
}

CvResult cross_validate(const Eigen::Ref<const Eigen::MatrixXd>& features, const std::vector<int>& labels,
                        const CvConfig& config, std::uint64_t seed) {
  if (static_cast<Index>(labels.size()) != features.rows()) {
    throw Error(ErrorCode::LengthMismatch, "feature rows and labels differ");
  }
  if (config.outer_folds < 1 || config.hidden_grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "need at least one outer fold and one hidden configuration");
  }
  class_count(labels);

  CvResult result;
  for (int outer = 0; outer < config.outer_folds; ++outer) {
    const auto outer_seed = derive_seed(seed, static_cast<std::uint64_t>(outer));
    Rng rng(outer_seed);
    const auto [train, test] = stratified_split(labels, config.test_fraction, rng);
    const Eigen::MatrixXd xtr = take_rows(features, train);
    const Eigen::MatrixXd xte = take_rows(features, test);
    const auto ytr = take(labels, train);
    const auto yte = take(labels, test);

    std::size_t chosen = 0;
    if (config.hidden_grid.size() > 1) {
      const auto fold = stratified_folds(ytr, config.inner_folds, rng);
      double best = -1.0;
      for (std::size_t h = 0; h < config.hidden_grid.size(); ++h) {
        double score = 0.0;
        for (int k = 0; k < config.inner_folds; ++k) {
          std::vector<Index> fit_rows;
          std::vector<Index> val_rows;
          for (std::size_t i = 0; i < fold.size(); ++i) {
            (fold[i] == k ? val_rows : fit_rows).push_back(static_cast<Index>(i));
          }
          score += fit_and_score(take_rows(xtr, fit_rows), take(ytr, fit_rows), take_rows(xtr, val_rows),
                                 take(ytr, val_rows), config, config.hidden_grid[h],
                                 derive_seed(outer_seed, 1000 + h * 100 + static_cast<std::size_t>(k)));
        }
        if (score > best) {
          best = score;
          chosen = h;
        }
      }
    }
    result.chosen_hidden.push_back(config.hidden_grid[chosen]);
    result.fold_accuracies.push_back(
        fit_and_score(xtr, ytr, xte, yte, config, config.hidden_grid[chosen], derive_seed(outer_seed, 1)));
  }

  const auto k = static_cast<double>(result.fold_accuracies.size());
  result.mean = std::accumulate(result.fold_accuracies.begin(), result.fold_accuracies.end(), 0.0) / k;
  double var = 0.0;
  for (double a : result.fold_accuracies) var += (a - result.mean) * (a - result.mean);
  result.std = std::sqrt(var / k);
  return result;
}

}  // namespace blis
