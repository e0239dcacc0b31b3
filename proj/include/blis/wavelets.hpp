#pragma once

#include "blis/operators.hpp"

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace blis {

/// Strictly increasing integer scales s_0 = 0, s_1 = 1, ..., s_{J+1}.
class ScaleSequence {
 public:
  explicit ScaleSequence(std::vector<int> scales);

  int J() const noexcept { return static_cast<int>(scales_.size()) - 2; }
  int operator[](std::size_t j) const { return scales_[j]; }
  int max_scale() const noexcept { return scales_.back(); }
  const std::vector<int>& values() const noexcept { return scales_; }
  bool dyadic() const;

 private:
  std::vector<int> scales_;
};

/// [0, 1, 2, 4, ..., 2^J].
ScaleSequence dyadic_scales(int J);

/// p(t) = t^low - t^high, or t^low alone for the low-pass term.
struct WaveletPoly {
  int low = 0;
  std::optional<int> high;

  double operator()(double t) const;
};

/// p_0..p_{J+1}. They sum to 1 identically.
std::vector<WaveletPoly> wavelet_polys(const ScaleSequence& scales);

enum class FrameFamily { W1, W2 };
std::string_view to_string(FrameFamily family);
FrameFamily parse_frame_family(std::string_view text);

/// How W2 filters are realized.
enum class FilterRoute { Spectral, Powers };

struct FrameBounds {
  double lower = 1.0;
  double upper = 1.0;
  bool exact = true;
};

/// min over t in [0,1] of (1-t)^2 + t^(2 s_{J+1}); a graph-independent
/// lower frame bound for W2.
double universal_w2_lower_bound(const ScaleSequence& scales);

/// (min, max) of sum_j h_j(lambda_i)^2 over the K-eigenvalues.
FrameBounds compute_frame_bounds(const DiffusionOperator& op, const ScaleSequence& scales,
                                 FrameFamily family);

/// Ordered filter bank F_0..F_{J+1} (wavelets then low-pass).
class WaveletFrame {
 public:
  FrameFamily family() const noexcept { return family_; }
  const ScaleSequence& scales() const noexcept { return scales_; }
  const WeightVector& weight() const noexcept { return weight_; }
  const FrameBounds& bounds() const noexcept { return bounds_; }
  int J() const noexcept { return scales_.J(); }
  int filter_count() const noexcept { return J() + 2; }
  Index size() const noexcept { return n_; }
  bool matrix_free() const noexcept { return static_cast<bool>(sparse_); }

  /// Dense filter j; only available when not matrix-free.
  const Eigen::MatrixXd& filter(int j) const;

  /// F_j X for every filter, X being n x cols.
  std::vector<Eigen::MatrixXd> apply_all(const Eigen::Ref<const Eigen::MatrixXd>& x) const;
  Eigen::MatrixXd apply_filter(int j, const Eigen::Ref<const Eigen::MatrixXd>& x) const;

  /// Copy with filter j multiplied by `factor`, keeping the claimed bounds.
  /// Used for fault injection in the verification suite.
  WaveletFrame with_scaled_filter(int j, double factor) const;

  friend WaveletFrame build_frame(const DiffusionOperator&, const ScaleSequence&, FrameFamily,
                                  FilterRoute);
  friend WaveletFrame build_frame_matrix_free(const Graph&, const WeightVector&,
                                              const ScaleSequence&);

 private:
  WaveletFrame(FrameFamily family, ScaleSequence scales, WeightVector weight)
      : family_(family), scales_(std::move(scales)), weight_(std::move(weight)) {}

  FrameFamily family_;
  ScaleSequence scales_;
  WeightVector weight_;
  FrameBounds bounds_;
  Index n_ = 0;
  std::vector<Eigen::MatrixXd> filters_;
  std::shared_ptr<const SparseDiffusion> sparse_;
  std::vector<double> filter_scale_;  // matrix-free fault injection
};

/// Dense frame. W1 always uses the spectral route; W2 uses `route`.
WaveletFrame build_frame(const DiffusionOperator& op, const ScaleSequence& scales,
                         FrameFamily family, FilterRoute route = FilterRoute::Powers);

/// W2 frame evaluated through sparse powers of K (canonical g). Bounds are
/// the conservative (universal lower, 1).
WaveletFrame build_frame_matrix_free(const Graph& g, const WeightVector& weight,
                                     const ScaleSequence& scales);

/// [F_0 x, ..., F_{J+1} x].
std::vector<Eigen::VectorXd> apply_frame(const WaveletFrame& frame,
                                         const Eigen::Ref<const Eigen::VectorXd>& x);

/// sum_j ||F_j x||_w^2.
double frame_energy(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace blis
