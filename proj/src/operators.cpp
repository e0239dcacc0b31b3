#include "blis/operators.hpp"

#include "blis/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace blis {

namespace {

constexpr double kSnapTol = 1e-8;
constexpr double kRangeTol = 1e-6;

}  // namespace

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
  const Eigen::VectorXd inv_sqrt_d = g.degree_power(-0.5);
  Eigen::MatrixXd L = -(inv_sqrt_d.asDiagonal() * g.dense_adjacency() * inv_sqrt_d.asDiagonal());
  L.diagonal().array() += 1.0;
  return L;
}

SparseMatrix normalized_laplacian_sparse(const Graph& g) {
  const Eigen::VectorXd inv_sqrt_d = g.degree_power(-0.5);
  SparseMatrix identity(g.size(), g.size());
  identity.setIdentity();
  SparseMatrix scaled = inv_sqrt_d.asDiagonal() * g.sparse_adjacency() * inv_sqrt_d.asDiagonal();
  return identity - scaled;
}

SpectralDecomposition eig_sym(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() != laplacian.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "eig_sym needs a square matrix");
  }
  const double asym = (laplacian - laplacian.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric (max |L - L^T| = " +
                                                std::to_string(asym) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigSolverFailure, "SelfAdjointEigenSolver did not converge");
  }

  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index i = 0; i < out.size(); ++i) {
    double& w = out.eigenvalues(i);
    if (w < -kRangeTol || w > 2.0 + kRangeTol) {
      throw Error(ErrorCode::SpectrumOutOfRange,
                  "eigenvalue " + std::to_string(w) + " outside [0, 2]");
    }
    if (std::abs(w) <= kSnapTol || w < 0.0) w = 0.0;
    if (std::abs(w - 2.0) <= kSnapTol || w > 2.0) w = 2.0;
  }
  return out;
}

Eigen::MatrixXd spectral_apply(const SpectralDecomposition& decomp, const ScalarFunction& f) {
  Eigen::VectorXd fv(decomp.size());
  for (Index i = 0; i < decomp.size(); ++i) fv(i) = f(decomp.eigenvalues(i));
  return decomp.eigenvectors * fv.asDiagonal() * decomp.eigenvectors.transpose();
}

double canonical_g(double t) { return 1.0 - 0.5 * t; }

DiffusionSpectrum diffusion_T(const SpectralDecomposition& decomp, const ScalarFunction& g) {
  const bool canonical = !g;
  const ScalarFunction fn = canonical ? ScalarFunction(canonical_g) : g;

  constexpr double tol = 1e-12;
  if (std::abs(fn(0.0) - 1.0) > tol || std::abs(fn(2.0)) > tol) {
    throw Error(ErrorCode::InvalidG, "g must satisfy g(0) = 1 and g(2) = 0");
  }
  constexpr int samples = 200;
  double prev = fn(0.0);
  for (int s = 1; s <= samples; ++s) {
    const double v = fn(2.0 * s / samples);
    if (!std::isfinite(v) || v > prev + tol) {
      throw Error(ErrorCode::InvalidG, "g is not decreasing on [0, 2]");
    }
    prev = v;
  }

  DiffusionSpectrum out;
  out.spectral = decomp;
  out.canonical = canonical;
  out.g_values.resize(decomp.size());
  for (Index i = 0; i < decomp.size(); ++i) {
    out.g_values(i) = std::clamp(fn(decomp.eigenvalues(i)), 0.0, 1.0);
  }
  out.T = decomp.eigenvectors * out.g_values.asDiagonal() * decomp.eigenvectors.transpose();
  return out;
}

// --- weights ----------------------------------------------------------------

WeightVector::WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {
  for (Index i = 0; i < w_.size(); ++i) {
    if (!(w_(i) > 0.0) || !std::isfinite(w_(i))) {
      throw Error(ErrorCode::NonPositiveWeight,
                  "weight " + std::to_string(i) + " = " + std::to_string(w_(i)));
    }
  }
  sqrt_w_ = w_.array().sqrt().matrix();
}

WeightVector WeightVector::ones(Index n) { return WeightVector(Eigen::VectorXd::Ones(n)); }

WeightVector WeightVector::degree_preset(const Graph& g, double alpha) {
  if (alpha < -0.5 || alpha > 0.5) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [-0.5, 0.5]");
  }
  return WeightVector(g.degree_power(2.0 * alpha));
}

WeightVector WeightVector::permuted(std::span<const Index> perm) const {
  if (static_cast<Index>(perm.size()) != size()) {
    throw Error(ErrorCode::LengthMismatch, "permutation length differs from weight length");
  }
  Eigen::VectorXd out(size());
  for (Index i = 0; i < size(); ++i) out(perm[static_cast<std::size_t>(i)]) = w_(i);
  return WeightVector(std::move(out));
}

double weighted_inner(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y, const WeightVector& w) {
  if (x.size() != y.size() || x.size() != w.size()) {
    throw Error(ErrorCode::LengthMismatch, "weighted_inner: lengths " + std::to_string(x.size()) +
                                               ", " + std::to_string(y.size()) + ", " +
                                               std::to_string(w.size()));
  }
  return (x.array() * y.array() * w.values().array()).sum();
}

double weighted_norm_sq(const Eigen::Ref<const Eigen::VectorXd>& x, const WeightVector& w) {
  return weighted_inner(x, x, w);
}

double weighted_norm(const Eigen::Ref<const Eigen::VectorXd>& x, const WeightVector& w) {
  return std::sqrt(weighted_norm_sq(x, w));
}

// --- K ----------------------------------------------------------------------

Eigen::MatrixXd DiffusionOperator::apply_function(const ScalarFunction& h) const {
  const auto& V = diffusion.spectral.eigenvectors;
  Eigen::VectorXd hv(size());
  for (Index i = 0; i < size(); ++i) hv(i) = h(diffusion.g_values(i));
  const Eigen::VectorXd& s = weight.sqrt_values();
  const Eigen::VectorXd inv_s = s.cwiseInverse();
  return inv_s.asDiagonal() * (V * hv.asDiagonal() * V.transpose()) * s.asDiagonal();
}

Eigen::VectorXd DiffusionOperator::eigenvector(Index i) const {
  return diffusion.spectral.eigenvectors.col(i).cwiseQuotient(weight.sqrt_values());
}

DiffusionOperator conjugate_K(const DiffusionSpectrum& diffusion, const WeightVector& weight) {
  if (weight.size() != diffusion.T.rows()) {
    throw Error(ErrorCode::LengthMismatch, "weight length differs from operator size");
  }
  const Eigen::VectorXd& s = weight.sqrt_values();
  Eigen::MatrixXd K = s.cwiseInverse().asDiagonal() * diffusion.T * s.asDiagonal();
  return DiffusionOperator{diffusion, weight, std::move(K)};
}

DiffusionOperator make_diffusion(const Graph& g, const WeightVector& weight,
                                 const ScalarFunction& g_fn) {
  const Eigen::MatrixXd L = normalized_laplacian(g);
  DiffusionSpectrum diffusion = diffusion_T(eig_sym(L), g_fn);
  if (diffusion.canonical) {
    // Assemble T = I - L_N/2 directly so that non-edges stay exactly zero.
    diffusion.T = -0.5 * L;
    diffusion.T.diagonal().array() += 1.0;
  }
  return conjugate_K(diffusion, weight);
}

DiffusionOperator make_diffusion(const Graph& g) {
  return make_diffusion(g, WeightVector::degree_preset(g, -0.5));
}

SparseDiffusion::SparseDiffusion(const Graph& g, const WeightVector& weight) : weight_(weight) {
  if (weight.size() != g.size()) {
    throw Error(ErrorCode::LengthMismatch, "weight length differs from node count");
  }
  SparseMatrix identity(g.size(), g.size());
  identity.setIdentity();
  SparseMatrix T = identity - 0.5 * normalized_laplacian_sparse(g);
  const Eigen::VectorXd& s = weight.sqrt_values();
  K_ = s.cwiseInverse().asDiagonal() * T * s.asDiagonal();
}

Eigen::MatrixXd SparseDiffusion::apply(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (x.rows() != K_.cols()) throw Error(ErrorCode::LengthMismatch, "SparseDiffusion::apply");
  return K_ * x;
}

}  // namespace blis
