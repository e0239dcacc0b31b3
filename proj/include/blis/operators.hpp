#pragma once

#include "blis/graph.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>

namespace blis {

using ScalarFunction = std::function<double(double)>;

/// Orthonormal eigenbasis of the symmetric normalized Laplacian,
/// eigenvalues ascending in [0, 2].
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // columns

  Index size() const noexcept { return eigenvalues.size(); }
};

/// L_N = I - D^{-1/2} A D^{-1/2}.
Eigen::MatrixXd normalized_laplacian(const Graph& g);
SparseMatrix normalized_laplacian_sparse(const Graph& g);

/// Dense symmetric eigensolve. Eigenvalues within 1e-8 of 0 or 2 are snapped
/// onto the endpoint; anything more than 1e-6 outside [0, 2] is an error.
SpectralDecomposition eig_sym(const Eigen::MatrixXd& laplacian);

/// V f(diag(omega)) V^T.
Eigen::MatrixXd spectral_apply(const SpectralDecomposition& decomp, const ScalarFunction& f);

/// g(t) = 1 - t/2.
double canonical_g(double t);

/// T = g(L_N) kept in factored form.
struct DiffusionSpectrum {
  SpectralDecomposition spectral;
  Eigen::VectorXd g_values;  // eigenvalues of T (and of K)
  Eigen::MatrixXd T;
  bool canonical = true;
};

/// Builds T = g(L_N). `g` must be nonincreasing on [0, 2] with g(0) = 1 and
/// g(2) = 0; leave it empty for the canonical choice.
DiffusionSpectrum diffusion_T(const SpectralDecomposition& decomp, const ScalarFunction& g = {});

/// Positive weights of the inner product <x, y>_w = sum x_i y_i w_i.
/// The conjugating matrix is W = diag(sqrt(w)), so <Wx, Wy>_2 = <x, y>_w.
class WeightVector {
 public:
  explicit WeightVector(Eigen::VectorXd w);

  static WeightVector ones(Index n);
  /// Preset with conjugating matrix W = D^alpha, i.e. w = d^(2 alpha).
  /// alpha = -1/2 turns K into the lazy random walk P.
  static WeightVector degree_preset(const Graph& g, double alpha);

  const Eigen::VectorXd& values() const noexcept { return w_; }
  /// Diagonal of W.
  const Eigen::VectorXd& sqrt_values() const noexcept { return sqrt_w_; }
  Index size() const noexcept { return w_.size(); }

  WeightVector permuted(std::span<const Index> perm) const;

 private:
  Eigen::VectorXd w_;
  Eigen::VectorXd sqrt_w_;
};

double weighted_inner(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y, const WeightVector& w);
double weighted_norm_sq(const Eigen::Ref<const Eigen::VectorXd>& x, const WeightVector& w);
double weighted_norm(const Eigen::Ref<const Eigen::VectorXd>& x, const WeightVector& w);

/// K = W^{-1} T W together with the spectral data it was built from.
struct DiffusionOperator {
  DiffusionSpectrum diffusion;
  WeightVector weight;
  Eigen::MatrixXd K;

  Index size() const noexcept { return K.rows(); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return diffusion.g_values; }

  /// W^{-1} V diag(h(lambda)) V^T W for a function h of the K-eigenvalues.
  Eigen::MatrixXd apply_function(const ScalarFunction& h) const;
  /// Eigenvector of K for the i-th eigenvalue: W^{-1} v_i (unit w-norm).
  Eigen::VectorXd eigenvector(Index i) const;
};

DiffusionOperator conjugate_K(const DiffusionSpectrum& diffusion, const WeightVector& weight);

/// Convenience chain: graph -> L_N -> eig -> T -> K.
DiffusionOperator make_diffusion(const Graph& g, const WeightVector& weight,
                                 const ScalarFunction& g_fn = {});
/// Default weight preset D^{-1/2} (K = P).
DiffusionOperator make_diffusion(const Graph& g);

/// Sparse K = W^{-1}(I - L_N/2)W for matrix-free application with the
/// canonical g.
class SparseDiffusion {
 public:
  SparseDiffusion(const Graph& g, const WeightVector& weight);

  Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  Index size() const noexcept { return K_.rows(); }
  const WeightVector& weight() const noexcept { return weight_; }

 private:
  SparseMatrix K_;
  WeightVector weight_;
};

}  // namespace blis
