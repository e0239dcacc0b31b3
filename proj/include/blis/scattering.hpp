#pragma once

#include "blis/wavelets.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace blis {

/// Wavelet indices (j_1, ..., j_m), each in 0..J. Empty is the zeroth order.
using ScatterPath = std::vector<int>;

/// |x| entrywise.
Eigen::VectorXd modulus(const Eigen::Ref<const Eigen::VectorXd>& x);

/// U[j_1..j_m] x = M Psi_{j_m} ... M Psi_{j_1} x, j_1 applied first.
Eigen::VectorXd scatter_U(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const ScatterPath& path);

/// S_J[path] x = Phi_J U[path] x for every path of order 0..max_order.
/// Paths within an order are enumerated lexicographically (j_1 slowest).
struct ScatterCoefficients {
  int J = 0;
  int max_order = 0;
  std::vector<ScatterPath> paths;
  /// n x paths.size(), column p holds S_J[paths[p]] x.
  Eigen::MatrixXd values;

  std::size_t count(int order) const;
};

ScatterCoefficients scatter_all(const WaveletFrame& frame,
                                const Eigen::Ref<const Eigen::VectorXd>& x, int max_order);

/// All paths of orders 0..max_order in canonical order.
std::vector<ScatterPath> scatter_paths(int J, int max_order);

/// First moment (node sum) per path, canonical order.
Eigen::VectorXd scatter_aggregate(const ScatterCoefficients& coeffs);

/// "S[3,1]"; the zeroth order is "S[]".
std::string scatter_label(const ScatterPath& path);

}  // namespace blis
