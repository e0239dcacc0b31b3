#include "blis/testkit.hpp"

#include "blis/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace blis::testkit {

Graph path_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return build_graph(edges, n);
}

Graph cycle_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return build_graph(edges, n);
}

Graph star_graph(Index leaves) {
  std::vector<Edge> edges;
  for (Index i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return build_graph(edges, leaves + 1);
}

Graph complete_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return build_graph(edges, n);
}

Graph rnd100() {
  Rng rng(kRnd100Seed);
  std::vector<Point2> points(100);
  for (auto& p : points) p = {uniform01(rng), uniform01(rng)};
  return knn_graph(points, 5);
}

std::vector<ZooGraph> graph_zoo() {
  std::vector<ZooGraph> zoo;
  zoo.push_back({"K2", complete_graph(2), 1, true});
  zoo.push_back({"C3", cycle_graph(3), 1, false});
  zoo.push_back({"C6", cycle_graph(6), 3, true});
  zoo.push_back({"P20", path_graph(20), 19, true});
  zoo.push_back({"S5", star_graph(5), 2, true});
  zoo.push_back({"RND100", rnd100(), -1, false});
  return zoo;
}

Eigen::VectorXd brute_chain(const std::vector<Eigen::MatrixXd>& matrices,
                            const std::vector<Nonlinearity>& nonlins, const Eigen::VectorXd& x) {
  if (matrices.size() != nonlins.size()) {
    throw Error(ErrorCode::DimMismatch, "brute_chain needs one nonlinearity per matrix");
  }
  std::vector<double> cur(x.data(), x.data() + x.size());
  for (std::size_t s = 0; s < matrices.size(); ++s) {
    const auto& M = matrices[s];
    if (M.cols() != static_cast<Index>(cur.size())) {
      throw Error(ErrorCode::DimMismatch, "brute_chain step " + std::to_string(s) + ": matrix has " +
                                              std::to_string(M.cols()) + " columns, signal has " +
                                              std::to_string(cur.size()) + " entries");
    }
    std::vector<double> next(static_cast<std::size_t>(M.rows()), 0.0);
    for (Index i = 0; i < M.rows(); ++i) {
      double acc = 0.0;
      for (Index j = 0; j < M.cols(); ++j) acc += M(i, j) * cur[static_cast<std::size_t>(j)];
      switch (nonlins[s]) {
        case Nonlinearity::Identity: break;
        case Nonlinearity::Relu: acc = acc > 0.0 ? acc : 0.0; break;
        case Nonlinearity::ReflectedRelu: acc = acc < 0.0 ? -acc : 0.0; break;
        case Nonlinearity::Modulus: acc = std::abs(acc); break;
      }
      next[static_cast<std::size_t>(i)] = acc;
    }
    cur = std::move(next);
  }
  Eigen::VectorXd out(static_cast<Index>(cur.size()));
  for (std::size_t i = 0; i < cur.size(); ++i) out(static_cast<Index>(i)) = cur[i];
  return out;
}

ProbeReport random_probe_suite(const ProbeProperty& property, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "random_probe_suite needs at least one trial");
  ProbeReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const auto trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(trial_seed);
    const auto outcome = property(rng, t);
    ++report.trials;
    report.worst_margin = std::min(report.worst_margin, outcome.margin);
    if (!outcome.ok) {
      report.passed = false;
      report.failing_trial = t;
      report.failing_seed = trial_seed;
      break;
    }
  }
  return report;
}

std::vector<Index> random_permutation(Index n, Rng& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  shuffle(perm, rng);
  return perm;
}

}  // namespace blis::testkit
