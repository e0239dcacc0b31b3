#include "blis/blis.hpp"

#include "blis/error.hpp"

#include <sstream>

namespace blis {

Eigen::VectorXd sigma1(const Eigen::Ref<const Eigen::VectorXd>& x) { return x.cwiseMax(0.0); }

Eigen::VectorXd sigma2(const Eigen::Ref<const Eigen::VectorXd>& x) { return (-x).cwiseMax(0.0); }

std::size_t blis_path_count(int J, int order) {
  std::size_t count = 1;
  for (int i = 0; i < order; ++i) count *= static_cast<std::size_t>(blis_radix(J));
  return count;
}

std::size_t encode_path(const BlisPath& path, int J) {
  const auto radix = static_cast<std::size_t>(blis_radix(J));
  std::size_t index = 0;
  for (const auto& step : path) {
    if (step.j < 0 || step.j > J + 1 || (step.k != 1 && step.k != 2)) {
      throw Error(ErrorCode::BadPathIndex, "BLIS step (" + std::to_string(step.j) + "," +
                                               std::to_string(step.k) + ") with J=" + std::to_string(J));
    }
    index = index * radix + static_cast<std::size_t>(2 * step.j + step.k - 1);
  }
  return index;
}

BlisPath decode_path(std::size_t index, int order, int J) {
  const auto radix = static_cast<std::size_t>(blis_radix(J));
  if (index >= blis_path_count(J, order)) {
    throw Error(ErrorCode::BadPathIndex, "path index " + std::to_string(index) + " out of range");
  }
  BlisPath path(static_cast<std::size_t>(order));
  for (int i = order - 1; i >= 0; --i) {
    const auto digit = static_cast<int>(index % radix);
    index /= radix;
    path[static_cast<std::size_t>(i)] = {digit / 2, digit % 2 + 1};
  }
  return path;
}

std::string blis_label(const BlisPath& path) {
  std::ostringstream os;
  os << "B[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    os << (i ? "|" : "") << path[i].j << '.' << path[i].k;
  }
  os << ']';
  return os.str();
}

Eigen::MatrixXd blis_layer(const WaveletFrame& frame, const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  if (inputs.rows() != frame.size()) {
    throw Error(ErrorCode::LengthMismatch, "BLIS layer input length " + std::to_string(inputs.rows()) +
                                               " on a frame of size " + std::to_string(frame.size()));
  }
  const int filters = frame.filter_count();
  const Index radix = 2 * filters;
  const auto filtered = frame.apply_all(inputs);
  Eigen::MatrixXd out(inputs.rows(), inputs.cols() * radix);
  for (Index p = 0; p < inputs.cols(); ++p) {
    for (int j = 0; j < filters; ++j) {
      const auto y = filtered[static_cast<std::size_t>(j)].col(p);
      out.col(p * radix + 2 * j) = y.cwiseMax(0.0);
      out.col(p * radix + 2 * j + 1) = (-y).cwiseMax(0.0);
    }
  }
  return out;
}

Eigen::VectorXd BlisCoefficients::at(const BlisPath& path) const {
  if (static_cast<int>(path.size()) != order) {
    throw Error(ErrorCode::BadPathIndex, "path of length " + std::to_string(path.size()) +
                                             " for order " + std::to_string(order));
  }
  return values.col(static_cast<Index>(encode_path(path, J)));
}

BlisCoefficients blis_coeffs(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x,
                             int order, int max_order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "BLIS order must be at least 1");
  if (order > max_order) {
    throw Error(ErrorCode::OrderTooLarge, "order " + std::to_string(order) + " exceeds cap " +
                                              std::to_string(max_order));
  }
  Eigen::MatrixXd level = x;
  for (int m = 0; m < order; ++m) level = blis_layer(frame, level);
  return BlisCoefficients{order, frame.J(), std::move(level)};
}

double mixed_norm_sq(const BlisCoefficients& coeffs, const WeightVector& w) {
  if (coeffs.values.rows() != w.size()) throw Error(ErrorCode::LengthMismatch, "mixed_norm_sq");
  return (coeffs.values.array().square().colwise() * w.values().array()).sum();
}

double mixed_distance_sq(const BlisCoefficients& a, const BlisCoefficients& b, const WeightVector& w) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "coefficient sets differ in shape");
  }
  if (a.values.rows() != w.size()) throw Error(ErrorCode::LengthMismatch, "mixed_distance_sq");
  return ((a.values - b.values).array().square().colwise() * w.values().array()).sum();
}

Eigen::MatrixXd invert_layer(const WaveletFrame& frame,
                             const Eigen::Ref<const Eigen::MatrixXd>& layer_outputs) {
  const int filters = frame.filter_count();
  const Index radix = 2 * filters;
  if (layer_outputs.rows() != frame.size() || layer_outputs.cols() % radix != 0 ||
      layer_outputs.cols() == 0) {
    throw Error(ErrorCode::ShapeMismatch,
                "expected n x 2(J+2)P outputs, got " + std::to_string(layer_outputs.rows()) + " x " +
                    std::to_string(layer_outputs.cols()));
  }
  const Index inputs = layer_outputs.cols() / radix;
  Eigen::MatrixXd recovered = Eigen::MatrixXd::Zero(frame.size(), inputs);
  for (int j = 0; j < filters; ++j) {
    // sigma1(y) - sigma2(y) = y = F_j x.
    Eigen::MatrixXd filtered(frame.size(), inputs);
    for (Index p = 0; p < inputs; ++p) {
      filtered.col(p) = layer_outputs.col(p * radix + 2 * j) - layer_outputs.col(p * radix + 2 * j + 1);
    }
    if (frame.family() == FrameFamily::W1) {
      // q_j(K)^2 = p_j(K).
      recovered += frame.apply_filter(j, filtered);
    } else {
      recovered += filtered;
    }
  }
  return recovered;
}

}  // namespace blis
