#pragma once

#include "blis/wavelets.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace blis {

/// ReLU(x).
Eigen::VectorXd sigma1(const Eigen::Ref<const Eigen::VectorXd>& x);
/// ReLU(-x).
Eigen::VectorXd sigma2(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Default cap on the BLIS order; the coefficient count grows as (2(J+2))^m.
inline constexpr int kDefaultMaxOrder = 4;

/// One (j, k) step of a BLIS path: filter j in 0..J+1, nonlinearity k in {1, 2}.
struct BlisStep {
  int j = 0;
  int k = 1;

  friend bool operator==(const BlisStep&, const BlisStep&) = default;
};

using BlisPath = std::vector<BlisStep>;

/// Branches per layer, 2(J+2).
inline int blis_radix(int J) { return 2 * (J + 2); }

/// Mixed-radix index of a path; the first layer is the most significant digit.
std::size_t encode_path(const BlisPath& path, int J);
BlisPath decode_path(std::size_t index, int order, int J);
std::size_t blis_path_count(int J, int order);

/// "B[j1.k1|j2.k2|...]".
std::string blis_label(const BlisPath& path);

/// Applies the frame and both nonlinearities to every column of `inputs`
/// (n x P). Output is n x (P * 2(J+2)); column p * 2(J+2) + 2j + (k-1) holds
/// sigma_k(F_j inputs.col(p)).
Eigen::MatrixXd blis_layer(const WaveletFrame& frame, const Eigen::Ref<const Eigen::MatrixXd>& inputs);

/// Final-layer coefficients of an m-layer BLIS module.
struct BlisCoefficients {
  int order = 0;
  int J = 0;
  /// n x (2(J+2))^order, columns in encode_path order.
  Eigen::MatrixXd values;

  std::size_t count() const noexcept { return static_cast<std::size_t>(values.cols()); }
  Eigen::VectorXd at(const BlisPath& path) const;
};

BlisCoefficients blis_coeffs(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x,
                             int order, int max_order = kDefaultMaxOrder);

/// sum over paths of ||B[path]||_w^2.
double mixed_norm_sq(const BlisCoefficients& coeffs, const WeightVector& w);
/// sum over paths of ||B[path] x - B[path] y||_w^2.
double mixed_distance_sq(const BlisCoefficients& a, const BlisCoefficients& b,
                         const WeightVector& w);

/// Recovers the layer inputs from a single blis_layer output block
/// (n x 2(J+2)*P). W2: sum_j (sigma1 - sigma2). W1: sum_j F_j (sigma1 - sigma2).
Eigen::MatrixXd invert_layer(const WaveletFrame& frame,
                             const Eigen::Ref<const Eigen::MatrixXd>& layer_outputs);

}  // namespace blis
