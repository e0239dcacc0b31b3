#pragma once

#include "blis/wavelets.hpp"

#include <Eigen/Core>

#include <optional>
#include <string_view>
#include <vector>

namespace blis {

enum class Regime { Bipartite, LargeDiameter };
std::string_view to_string(Regime regime);

/// Two signals, distinct up to sign, with identical wavelet moduli.
struct CounterexamplePair {
  Eigen::VectorXd x1;
  Eigen::VectorXd x2;
  Regime regime = Regime::Bipartite;

  // Bipartite witness: K u1 = u1, K u2 = 0.
  Eigen::VectorXd u1;
  Eigen::VectorXd u2;

  // Diameter witness.
  std::vector<std::vector<Index>> sets;
  Index separation = 0;

  /// Largest violation of the construction identities (W2, power route):
  /// bipartite checks Psi_j x = 0, Psi_0 x = +-u2, Phi x = u1; diameter
  /// checks M Psi_j x1 = M Psi_j x2.
  double residual = 0.0;
};

/// x1 = u1 + u2, x2 = u1 - u2 from the eigenvalue-1 and eigenvalue-0
/// eigenvectors of K. Checks Psi_j x = 0 (j >= 1), Psi_0 x = +-u2, Phi x = u1.
CounterexamplePair bipartite_counterexample(const Graph& g, const DiffusionOperator& op,
                                            const ScaleSequence& scales);

/// x1 = delta_S1 + delta_S2, x2 = delta_S1 - delta_S2 for sets at least
/// 2 s_{J+1} + 1 apart. Without sets, picks diameter endpoints.
CounterexamplePair diameter_counterexample(const Graph& g, const DiffusionOperator& op,
                                           const ScaleSequence& scales,
                                           std::optional<std::vector<Index>> s1 = std::nullopt,
                                           std::optional<std::vector<Index>> s2 = std::nullopt);

/// x1 = d1 + d2 - d3, x2 = d1 - d2 + d3 with |S1| = |S2| = |S3|. Needs K = P
/// so that node sums of the zeroth-order coefficients coincide.
CounterexamplePair three_set_counterexample(const Graph& g, const DiffusionOperator& op,
                                            const ScaleSequence& scales,
                                            const std::vector<Index>& s1,
                                            const std::vector<Index>& s2,
                                            const std::vector<Index>& s3);

struct ScatterDeviation {
  /// max |S[path] x1 - S[path] x2| over orders 1..m.
  double max_deviation = 0.0;
  /// max |Phi x1 - Phi x2| (order 0, no modulus).
  double zeroth_raw = 0.0;
  /// max ||Phi x1| - |Phi x2||.
  double zeroth_modulus = 0.0;
  /// max over j of ||M Psi_j x1 - M Psi_j x2||_inf.
  double first_layer = 0.0;
};

ScatterDeviation verify_scatter_identical(const WaveletFrame& frame, const CounterexamplePair& pair,
                                          int max_order);

struct BlisSeparation {
  double distance_sq = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double input_distance_sq = 0.0;
};

/// BLIS distance between the pair and the bi-Lipschitz bounds
/// (c/2)^m ||x1 - x2||_w^2 and C^m ||x1 - x2||_w^2.
BlisSeparation verify_blis_separates(const WaveletFrame& frame, const CounterexamplePair& pair,
                                     int order);

/// Indices i with |v_i| > threshold.
std::vector<Index> numeric_support(const Eigen::Ref<const Eigen::VectorXd>& v,
                                   double threshold = 1e-10);

}  // namespace blis
