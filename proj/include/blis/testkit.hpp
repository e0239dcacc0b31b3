#pragma once

// Independent reference paths shared by the test suites and `blis verify`.

#include "blis/graph.hpp"
#include "blis/random.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace blis::testkit {

Graph path_graph(Index n);
Graph cycle_graph(Index n);
/// Center 0 joined to `leaves` leaf nodes.
Graph star_graph(Index leaves);
Graph complete_graph(Index n);

/// Seed for the RND100 fixture (frozen; the resulting 5-NN graph is connected).
inline constexpr std::uint64_t kRnd100Seed = 20240611;

/// Random 5-NN graph on 100 uniform points in the unit square.
Graph rnd100();

struct ZooGraph {
  std::string name;
  Graph graph;
  Index expected_diameter = 0;  // < 0 when not known analytically
  bool expected_bipartite = false;
};

/// K2, C3, C6, P20, S5, RND100.
std::vector<ZooGraph> graph_zoo();

enum class Nonlinearity { Identity, Relu, ReflectedRelu, Modulus };

/// Naive left fold x <- nonlin_i(M_i x), with plain loops (no Eigen products).
Eigen::VectorXd brute_chain(const std::vector<Eigen::MatrixXd>& matrices,
                            const std::vector<Nonlinearity>& nonlins, const Eigen::VectorXd& x);

struct ProbeOutcome {
  bool ok = true;
  /// Distance to the bound; negative means violated.
  double margin = 0.0;
};

struct ProbeReport {
  bool passed = true;
  int trials = 0;
  double worst_margin = 0.0;
  std::optional<int> failing_trial;
  std::optional<std::uint64_t> failing_seed;
};

using ProbeProperty = std::function<ProbeOutcome(Rng& rng, int trial)>;

/// Runs `property` on `trials` seeded streams. Trial t uses
/// derive_seed(seed, t); the first failure stops the run.
ProbeReport random_probe_suite(const ProbeProperty& property, int trials, std::uint64_t seed);

/// Uniformly random permutation of 0..n-1.
std::vector<Index> random_permutation(Index n, Rng& rng);

}  // namespace blis::testkit
