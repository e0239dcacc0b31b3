#include "blis/counterexamples.hpp"

#include "blis/blis.hpp"
#include "blis/error.hpp"
#include "blis/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace blis {

namespace {

constexpr double kEigTol = 1e-8;

Eigen::VectorXd indicator(const std::vector<Index>& set, Index n) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (Index i : set) {
    if (i < 0 || i >= n) throw Error(ErrorCode::InvalidNode, "set member " + std::to_string(i));
    v(i) = 1.0;
  }
  return v;
}

Index set_distance(const Graph& g, const std::vector<Index>& a, const std::vector<Index>& b) {
  Index best = std::numeric_limits<Index>::max();
  for (Index u : a) {
    const auto dist = bfs_distances(g, u);
    for (Index v : b) best = std::min(best, dist[static_cast<std::size_t>(v)]);
  }
  return best;
}

double modulus_mismatch(const WaveletFrame& frame, const Eigen::VectorXd& x1, const Eigen::VectorXd& x2) {
  const auto f1 = apply_frame(frame, x1);
  const auto f2 = apply_frame(frame, x2);
  double worst = 0.0;
  for (int j = 0; j <= frame.J(); ++j) {
    const auto idx = static_cast<std::size_t>(j);
    worst = std::max(worst, (f1[idx].cwiseAbs() - f2[idx].cwiseAbs()).cwiseAbs().maxCoeff());
  }
  return worst;
}

void require_canonical(const DiffusionOperator& op) {
  if (!op.diffusion.canonical) {
    throw Error(ErrorCode::InvalidG, "the large-diameter construction needs g(t) = 1 - t/2");
  }
}

void check_separation(const Graph& g, const std::vector<Index>& a, const std::vector<Index>& b,
                      Index needed) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "node sets must be nonempty");
  const Index d = set_distance(g, a, b);
  if (d < needed) {
    throw Error(ErrorCode::SetsTooClose, "sets are " + std::to_string(d) + " apart, need " +
                                             std::to_string(needed));
  }
}

}  // namespace

std::string_view to_string(Regime regime) {
  return regime == Regime::Bipartite ? "bipartite" : "large-diameter";
}

std::vector<Index> numeric_support(const Eigen::Ref<const Eigen::VectorXd>& v, double threshold) {
  std::vector<Index> support;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > threshold) support.push_back(i);
  }
  return support;
}

CounterexamplePair bipartite_counterexample(const Graph& g, const DiffusionOperator& op,
                                            const ScaleSequence& scales) {
  if (!is_bipartite(g).bipartite) throw Error(ErrorCode::NotBipartite, "graph has an odd cycle");
  if (op.size() != g.size()) throw Error(ErrorCode::LengthMismatch, "operator and graph differ in size");

  const auto& lam = op.eigenvalues();
  std::optional<Index> one;
  std::optional<Index> zero;
  for (Index i = 0; i < lam.size(); ++i) {
    if (!one && std::abs(lam(i) - 1.0) <= kEigTol) one = i;
    if (!zero && std::abs(lam(i)) <= kEigTol) zero = i;
  }
  if (!one || !zero) {
    throw Error(ErrorCode::EigenvalueMissing, "K lacks an eigenvalue at 1 or at 0");
  }

  CounterexamplePair pair;
  pair.regime = Regime::Bipartite;
  pair.u1 = op.eigenvector(*one);
  pair.u2 = op.eigenvector(*zero);
  pair.x1 = pair.u1 + pair.u2;
  pair.x2 = pair.u1 - pair.u2;

  const auto frame = build_frame(op, scales, FrameFamily::W2, FilterRoute::Powers);
  const auto f1 = apply_frame(frame, pair.x1);
  const auto f2 = apply_frame(frame, pair.x2);
  const int J = frame.J();
  double residual = 0.0;
  for (int j = 1; j <= J; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    residual = std::max({residual, f1[idx].cwiseAbs().maxCoeff(), f2[idx].cwiseAbs().maxCoeff()});
  }
  residual = std::max({residual, (f1[0] - pair.u2).cwiseAbs().maxCoeff(),
                       (f2[0] + pair.u2).cwiseAbs().maxCoeff()});
  const auto low = static_cast<std::size_t>(J + 1);
  residual = std::max({residual, (f1[low] - pair.u1).cwiseAbs().maxCoeff(),
                       (f2[low] - pair.u1).cwiseAbs().maxCoeff()});
  pair.residual = residual;
  return pair;
}

CounterexamplePair diameter_counterexample(const Graph& g, const DiffusionOperator& op,
                                           const ScaleSequence& scales,
                                           std::optional<std::vector<Index>> s1,
                                           std::optional<std::vector<Index>> s2) {
  require_canonical(op);
  if (op.size() != g.size()) throw Error(ErrorCode::LengthMismatch, "operator and graph differ in size");
  const Index needed = 2 * static_cast<Index>(scales.max_scale()) + 1;
  const auto [a, b] = diameter_endpoints(g);
  const Index diam = path_distance(g, a, b);
  if (diam < needed) {
    throw Error(ErrorCode::DiameterTooSmall, "diameter " + std::to_string(diam) + " <= 2 s_{J+1} = " +
                                                 std::to_string(needed - 1));
  }
  if (s1.has_value() != s2.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "supply both node sets or neither");
  }
  if (!s1) {
    s1 = std::vector<Index>{a};
    s2 = std::vector<Index>{b};
  }
  check_separation(g, *s1, *s2, needed);

  CounterexamplePair pair;
  pair.regime = Regime::LargeDiameter;
  const Eigen::VectorXd d1 = indicator(*s1, g.size());
  const Eigen::VectorXd d2 = indicator(*s2, g.size());
  pair.x1 = d1 + d2;
  pair.x2 = d1 - d2;
  pair.separation = set_distance(g, *s1, *s2);
  pair.sets = {*s1, *s2};

  const auto frame = build_frame(op, scales, FrameFamily::W2, FilterRoute::Powers);
  pair.residual = modulus_mismatch(frame, pair.x1, pair.x2);
  return pair;
}

CounterexamplePair three_set_counterexample(const Graph& g, const DiffusionOperator& op,
                                            const ScaleSequence& scales, const std::vector<Index>& s1,
                                            const std::vector<Index>& s2,
                                            const std::vector<Index>& s3) {
  require_canonical(op);
  if (op.size() != g.size()) throw Error(ErrorCode::LengthMismatch, "operator and graph differ in size");
  // K must be column stochastic (the lazy random walk P).
  const double col_err = (op.K.colwise().sum().array() - 1.0).abs().maxCoeff();
  if (col_err > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "three-set construction needs K = P (Markov)");
  }
  if (s1.size() != s2.size() || s2.size() != s3.size()) {
    throw Error(ErrorCode::InvalidArgument, "the three sets must have equal size");
  }
  const Index needed = 2 * static_cast<Index>(scales.max_scale()) + 1;
  check_separation(g, s1, s2, needed);
  check_separation(g, s1, s3, needed);
  check_separation(g, s2, s3, needed);

  CounterexamplePair pair;
  pair.regime = Regime::LargeDiameter;
  const Eigen::VectorXd d1 = indicator(s1, g.size());
  const Eigen::VectorXd d2 = indicator(s2, g.size());
  const Eigen::VectorXd d3 = indicator(s3, g.size());
  pair.x1 = d1 + d2 - d3;
  pair.x2 = d1 - d2 + d3;
  pair.sets = {s1, s2, s3};
  pair.separation = std::min({set_distance(g, s1, s2), set_distance(g, s1, s3), set_distance(g, s2, s3)});

  const auto frame = build_frame(op, scales, FrameFamily::W2, FilterRoute::Powers);
  pair.residual = modulus_mismatch(frame, pair.x1, pair.x2);
  return pair;
}

ScatterDeviation verify_scatter_identical(const WaveletFrame& frame, const CounterexamplePair& pair,
                                          int max_order) {
  const auto c1 = scatter_all(frame, pair.x1, max_order);
  const auto c2 = scatter_all(frame, pair.x2, max_order);
  ScatterDeviation dev;
  for (std::size_t p = 0; p < c1.paths.size(); ++p) {
    const auto col = static_cast<Index>(p);
    const auto diff = (c1.values.col(col) - c2.values.col(col)).cwiseAbs().maxCoeff();
    if (c1.paths[p].empty()) {
      dev.zeroth_raw = diff;
      dev.zeroth_modulus =
          (c1.values.col(col).cwiseAbs() - c2.values.col(col).cwiseAbs()).cwiseAbs().maxCoeff();
    } else {
      dev.max_deviation = std::max(dev.max_deviation, diff);
    }
  }
  dev.first_layer = modulus_mismatch(frame, pair.x1, pair.x2);
  return dev;
}

BlisSeparation verify_blis_separates(const WaveletFrame& frame, const CounterexamplePair& pair, int order) {
  const auto b1 = blis_coeffs(frame, pair.x1, order);
  const auto b2 = blis_coeffs(frame, pair.x2, order);
  BlisSeparation out;
  out.distance_sq = mixed_distance_sq(b1, b2, frame.weight());
  out.input_distance_sq = weighted_norm_sq(pair.x1 - pair.x2, frame.weight());
  out.lower_bound = std::pow(frame.bounds().lower / 2.0, order) * out.input_distance_sq;
  out.upper_bound = std::pow(frame.bounds().upper, order) * out.input_distance_sq;
  return out;
}

}  // namespace blis
