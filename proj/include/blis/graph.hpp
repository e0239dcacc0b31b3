#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace blis {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Graphs with at most this many nodes keep a dense adjacency matrix;
/// larger graphs are stored in compressed sparse rows.
inline constexpr Index kDenseCutover = 2048;

struct Edge {
  Index src;
  Index dst;
  double weight;
};

using Point2 = std::array<double, 2>;

/// Weighted, undirected, connected graph. Immutable after construction.
class Graph {
 public:
  Index size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool is_dense() const noexcept { return std::holds_alternative<Eigen::MatrixXd>(adjacency_); }

  double weight(Index i, Index j) const;

  /// Unique edges with src < dst, sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Index> neighbors(Index i) const { return neighbors_[static_cast<std::size_t>(i)]; }

  /// Weighted degrees d = A 1, all strictly positive.
  const Eigen::VectorXd& degrees() const noexcept { return degrees_; }
  /// Entrywise d^alpha.
  Eigen::VectorXd degree_power(double alpha) const;

  Eigen::MatrixXd dense_adjacency() const;
  SparseMatrix sparse_adjacency() const;

  /// Relabels node i as perm[i].
  Graph permuted(std::span<const Index> perm) const;

  friend Graph build_graph(std::span<const Edge> edges, Index n);

 private:
  Graph() = default;

  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Index>> neighbors_;
  std::variant<Eigen::MatrixXd, SparseMatrix> adjacency_;
  Eigen::VectorXd degrees_;
};

/// Builds and validates a graph. Listing an edge twice is allowed only with
/// the same weight; the graph must be connected.
Graph build_graph(std::span<const Edge> edges, Index n);

/// Unweighted k-nearest-neighbour graph, symmetrized with the OR rule.
/// Distance ties go to the lower node index.
Graph knn_graph(std::span<const Point2> points, Index k);

/// Unweighted shortest path length (BFS).
Index path_distance(const Graph& g, Index i, Index j);

/// BFS distances from `source` to every node.
std::vector<Index> bfs_distances(const Graph& g, Index source);

Index diameter(const Graph& g);

/// A pair of nodes realizing the diameter: the first (lowest source, then
/// lowest target) pair found.
std::pair<Index, Index> diameter_endpoints(const Graph& g);

struct Bipartition {
  bool bipartite = false;
  /// 0/1 colouring, present only when bipartite.
  std::optional<std::vector<int>> coloring;
};

Bipartition is_bipartite(const Graph& g);

// --- file formats -----------------------------------------------------------

/// Writes `src,dst,weight` CSV and, when `sidecar` is given, `{"n": <int>}`.
void write_edge_csv(const Graph& g, const std::filesystem::path& csv,
                    const std::optional<std::filesystem::path>& sidecar = std::nullopt);

/// Reads an edge list; node count from the sidecar JSON when it exists,
/// otherwise max index + 1.
Graph read_edge_csv(const std::filesystem::path& csv,
                    const std::optional<std::filesystem::path>& sidecar = std::nullopt);

void write_points_csv(std::span<const Point2> points, const std::filesystem::path& csv);
std::vector<Point2> read_points_csv(const std::filesystem::path& csv);

}  // namespace blis
