#include "blis/wavelets.hpp"

#include "blis/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace blis {

ScaleSequence::ScaleSequence(std::vector<int> scales) : scales_(std::move(scales)) {
  if (scales_.size() < 2 || scales_[0] != 0 || scales_[1] != 1) {
    throw Error(ErrorCode::InvalidArgument, "scales must start with 0, 1");
  }
  for (std::size_t j = 1; j < scales_.size(); ++j) {
    if (scales_[j] <= scales_[j - 1]) {
      throw Error(ErrorCode::InvalidArgument, "scales must be strictly increasing");
    }
  }
}

bool ScaleSequence::dyadic() const {
  for (std::size_t j = 2; j < scales_.size(); ++j) {
    if (scales_[j] != 2 * scales_[j - 1]) return false;
  }
  return true;
}

ScaleSequence dyadic_scales(int J) {
  if (J < 0) throw Error(ErrorCode::InvalidArgument, "J must be nonnegative");
  if (J > 30) throw Error(ErrorCode::InvalidArgument, "J too large for integer scales");
  std::vector<int> s{0, 1};
  for (int j = 2; j <= J + 1; ++j) s.push_back(1 << (j - 1));
  return ScaleSequence(std::move(s));
}

double WaveletPoly::operator()(double t) const {
  const double lo = std::pow(t, low);
  return high ? lo - std::pow(t, *high) : lo;
}

std::vector<WaveletPoly> wavelet_polys(const ScaleSequence& scales) {
  std::vector<WaveletPoly> polys;
  const int J = scales.J();
  for (int j = 0; j <= J; ++j) polys.push_back({scales[j], scales[j + 1]});
  polys.push_back({scales.max_scale(), std::nullopt});
  return polys;
}

std::string_view to_string(FrameFamily family) { return family == FrameFamily::W1 ? "W1" : "W2"; }

FrameFamily parse_frame_family(std::string_view text) {
  if (text == "w1" || text == "W1") return FrameFamily::W1;
  if (text == "w2" || text == "W2") return FrameFamily::W2;
  throw Error(ErrorCode::InvalidArgument, "unknown frame family '" + std::string(text) + "'");
}

double universal_w2_lower_bound(const ScaleSequence& scales) {
  const double two_s = 2.0 * scales.max_scale();
  auto f = [two_s](double t) { return (1.0 - t) * (1.0 - t) + std::pow(t, two_s); };
  constexpr int grid = 20000;
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double v = f(static_cast<double>(i) / grid);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  // f is convex on [0, 1]; refine inside the bracketing grid cells.
  double a = std::max(0, best - 1) / static_cast<double>(grid);
  double b = std::min(grid, best + 1) / static_cast<double>(grid);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double c = b - phi * (b - a);
    const double d = a + phi * (b - a);
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::min(best_val, f(0.5 * (a + b)));
}

namespace {

double checked_sqrt(double v) {
  if (v >= 0.0) return std::sqrt(v);
  if (v >= -1e-12) return 0.0;
  throw Error(ErrorCode::NegativeUnderSqrt,
              "wavelet polynomial is " + std::to_string(v) + " at a K-eigenvalue");
}

void check_eigenvalues(const DiffusionOperator& op) {
  const auto& lam = op.eigenvalues();
  if (lam.size() > 0 && (lam.minCoeff() < -1e-12 || lam.maxCoeff() > 1.0 + 1e-12)) {
    throw Error(ErrorCode::NegativeUnderSqrt, "K-eigenvalues leave [0, 1]");
  }
}

/// K^s for every scale, by repeated squaring for dyadic scales and binary
/// exponentiation otherwise.
std::map<int, Eigen::MatrixXd> scale_powers(const Eigen::MatrixXd& K, const ScaleSequence& scales) {
  std::map<int, Eigen::MatrixXd> powers;
  const Index n = K.rows();
  powers.emplace(0, Eigen::MatrixXd::Identity(n, n));
  if (scales.dyadic()) {
    Eigen::MatrixXd current = K;
    for (std::size_t j = 1; j < scales.values().size(); ++j) {
      if (j > 1) current = current * current;
      powers.emplace(scales[j], current);
    }
    return powers;
  }
  for (std::size_t j = 1; j < scales.values().size(); ++j) {
    int e = scales[j];
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd base = K;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    powers.emplace(scales[j], std::move(result));
  }
  return powers;
}

}  // namespace

FrameBounds compute_frame_bounds(const DiffusionOperator& op, const ScaleSequence& scales,
                                 FrameFamily family) {
  if (family == FrameFamily::W1) return {1.0, 1.0, true};
  const auto polys = wavelet_polys(scales);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index i = 0; i < op.eigenvalues().size(); ++i) {
    const double t = op.eigenvalues()(i);
    double energy = 0.0;
    for (const auto& p : polys) {
      const double v = p(t);
      energy += v * v;
    }
    lo = std::min(lo, energy);
    hi = std::max(hi, energy);
  }
  return {lo, hi, true};
}

const Eigen::MatrixXd& WaveletFrame::filter(int j) const {
  if (matrix_free()) throw Error(ErrorCode::InvalidArgument, "matrix-free frame has no dense filters");
  if (j < 0 || j >= filter_count()) {
    throw Error(ErrorCode::BadPathIndex, "filter index " + std::to_string(j));
  }
  return filters_[static_cast<std::size_t>(j)];
}

std::vector<Eigen::MatrixXd> WaveletFrame::apply_all(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (x.rows() != n_) {
    throw Error(ErrorCode::LengthMismatch, "signal length " + std::to_string(x.rows()) +
                                               " on a frame of size " + std::to_string(n_));
  }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(filter_count()));
  if (!matrix_free()) {
    for (const auto& F : filters_) out.emplace_back(F * x);
    return out;
  }

  // Diffusion powers K^t x for t = 0..s_{J+1}, keeping only the scale powers.
  std::map<int, Eigen::MatrixXd> powers;
  Eigen::MatrixXd current = x;
  powers.emplace(0, current);
  for (int t = 1; t <= scales_.max_scale(); ++t) {
    current = sparse_->apply(current);
    if (std::binary_search(scales_.values().begin(), scales_.values().end(), t)) {
      powers.emplace(t, current);
    }
  }
  for (int j = 0; j <= J(); ++j) {
    out.emplace_back(filter_scale_[static_cast<std::size_t>(j)] *
                     (powers.at(scales_[j]) - powers.at(scales_[j + 1])));
  }
  out.emplace_back(filter_scale_.back() * powers.at(scales_.max_scale()));
  return out;
}

Eigen::MatrixXd WaveletFrame::apply_filter(int j, const Eigen::Ref<const Eigen::MatrixXd>& x) const {
  if (j < 0 || j >= filter_count()) {
    throw Error(ErrorCode::BadPathIndex, "filter index " + std::to_string(j));
  }
  if (!matrix_free()) {
    if (x.rows() != n_) throw Error(ErrorCode::LengthMismatch, "apply_filter");
    return filters_[static_cast<std::size_t>(j)] * x;
  }
  return apply_all(x)[static_cast<std::size_t>(j)];
}

WaveletFrame WaveletFrame::with_scaled_filter(int j, double factor) const {
  if (j < 0 || j >= filter_count()) {
    throw Error(ErrorCode::BadPathIndex, "filter index " + std::to_string(j));
  }
  WaveletFrame copy = *this;
  if (matrix_free()) {
    copy.filter_scale_[static_cast<std::size_t>(j)] *= factor;
  } else {
    copy.filters_[static_cast<std::size_t>(j)] *= factor;
  }
  return copy;
}

WaveletFrame build_frame(const DiffusionOperator& op, const ScaleSequence& scales,
                         FrameFamily family, FilterRoute route) {
  check_eigenvalues(op);
  WaveletFrame frame(family, scales, op.weight);
  frame.n_ = op.size();
  frame.bounds_ = compute_frame_bounds(op, scales, family);

  const auto polys = wavelet_polys(scales);
  if (family == FrameFamily::W1) {
    for (const auto& p : polys) {
      frame.filters_.push_back(op.apply_function([&p](double t) { return checked_sqrt(p(t)); }));
    }
    return frame;
  }

  if (route == FilterRoute::Spectral) {
    for (const auto& p : polys) frame.filters_.push_back(op.apply_function(p));
    return frame;
  }

  const auto powers = scale_powers(op.K, scales);
  const int J = scales.J();
  for (int j = 0; j <= J; ++j) {
    frame.filters_.push_back(powers.at(scales[j]) - powers.at(scales[j + 1]));
  }
  frame.filters_.push_back(powers.at(scales.max_scale()));
  return frame;
}

WaveletFrame build_frame_matrix_free(const Graph& g, const WeightVector& weight,
                                     const ScaleSequence& scales) {
  WaveletFrame frame(FrameFamily::W2, scales, weight);
  frame.n_ = g.size();
  frame.sparse_ = std::make_shared<const SparseDiffusion>(g, weight);
  frame.filter_scale_.assign(static_cast<std::size_t>(scales.J() + 2), 1.0);
  frame.bounds_ = {universal_w2_lower_bound(scales), 1.0, false};
  return frame;
}

std::vector<Eigen::VectorXd> apply_frame(const WaveletFrame& frame,
                                         const Eigen::Ref<const Eigen::VectorXd>& x) {
  auto blocks = frame.apply_all(x);
  std::vector<Eigen::VectorXd> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.emplace_back(b.col(0));
  return out;
}

double frame_energy(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x) {
  double total = 0.0;
  for (const auto& y : apply_frame(frame, x)) total += weighted_norm_sq(y, frame.weight());
  return total;
}

}  // namespace blis
