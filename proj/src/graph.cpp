#include "blis/graph.hpp"

#include "blis/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <queue>
#include <sstream>

namespace blis {

namespace {

void check_node(Index i, Index n) {
  if (i < 0 || i >= n) {
    throw Error(ErrorCode::InvalidNode, "node " + std::to_string(i) + " outside [0, " +
                                            std::to_string(n) + ")");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, const std::filesystem::path& file) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Io, "bad number '" + s + "' in " + file.string());
  }
}

}  // namespace

double Graph::weight(Index i, Index j) const {
  check_node(i, n_);
  check_node(j, n_);
  if (const auto* dense = std::get_if<Eigen::MatrixXd>(&adjacency_)) return (*dense)(i, j);
  return std::get<SparseMatrix>(adjacency_).coeff(i, j);
}

Eigen::VectorXd Graph::degree_power(double alpha) const {
  return degrees_.array().pow(alpha).matrix();
}

Eigen::MatrixXd Graph::dense_adjacency() const {
  if (const auto* dense = std::get_if<Eigen::MatrixXd>(&adjacency_)) return *dense;
  return Eigen::MatrixXd(std::get<SparseMatrix>(adjacency_));
}

SparseMatrix Graph::sparse_adjacency() const {
  if (const auto* sparse = std::get_if<SparseMatrix>(&adjacency_)) return *sparse;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * edges_.size());
  for (const auto& e : edges_) {
    triplets.emplace_back(e.src, e.dst, e.weight);
    triplets.emplace_back(e.dst, e.src, e.weight);
  }
  SparseMatrix a(n_, n_);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

Graph Graph::permuted(std::span<const Index> perm) const {
  if (static_cast<Index>(perm.size()) != n_) {
    throw Error(ErrorCode::LengthMismatch, "permutation length differs from node count");
  }
  std::vector<Edge> moved;
  moved.reserve(edges_.size());
  for (const auto& e : edges_) {
    moved.push_back({perm[static_cast<std::size_t>(e.src)], perm[static_cast<std::size_t>(e.dst)],
                     e.weight});
  }
  return build_graph(moved, n_);
}

Graph build_graph(std::span<const Edge> edges, Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "graph needs at least one node");

  std::map<std::pair<Index, Index>, double> unique;
  for (const auto& e : edges) {
    check_node(e.src, n);
    check_node(e.dst, n);
    if (e.src == e.dst) throw Error(ErrorCode::SelfLoop, "self loop at " + std::to_string(e.src));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NegativeWeight, "edge (" + std::to_string(e.src) + "," +
                                                 std::to_string(e.dst) + ") has weight " +
                                                 std::to_string(e.weight));
    }
    const auto key = std::minmax(e.src, e.dst);
    auto [it, inserted] = unique.emplace(key, e.weight);
    if (!inserted && it->second != e.weight) {
      throw Error(ErrorCode::DuplicateEdgeConflict, "edge (" + std::to_string(key.first) + "," +
                                                        std::to_string(key.second) +
                                                        ") listed with different weights");
    }
  }

  Graph g;
  g.n_ = n;
  g.neighbors_.assign(static_cast<std::size_t>(n), {});
  g.degrees_ = Eigen::VectorXd::Zero(n);
  g.edges_.reserve(unique.size());
  for (const auto& [key, w] : unique) {
    g.edges_.push_back({key.first, key.second, w});
    g.neighbors_[static_cast<std::size_t>(key.first)].push_back(key.second);
    g.neighbors_[static_cast<std::size_t>(key.second)].push_back(key.first);
    g.degrees_(key.first) += w;
    g.degrees_(key.second) += w;
  }
  for (auto& nb : g.neighbors_) std::sort(nb.begin(), nb.end());

  if (n <= kDenseCutover) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges_) {
      a(e.src, e.dst) = e.weight;
      a(e.dst, e.src) = e.weight;
    }
    g.adjacency_ = std::move(a);
  } else {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(2 * g.edges_.size());
    for (const auto& e : g.edges_) {
      triplets.emplace_back(e.src, e.dst, e.weight);
      triplets.emplace_back(e.dst, e.src, e.weight);
    }
    SparseMatrix a(n, n);
    a.setFromTriplets(triplets.begin(), triplets.end());
    g.adjacency_ = std::move(a);
  }

  const auto dist = bfs_distances(g, 0);
  const auto unreached = std::count(dist.begin(), dist.end(), Index{-1});
  if (unreached > 0) {
    throw Error(ErrorCode::DisconnectedGraph,
                std::to_string(unreached) + " node(s) unreachable from node 0");
  }
  return g;
}

Graph knn_graph(std::span<const Point2> points, Index k) {
  const auto n = static_cast<Index>(points.size());
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k >= n) {
    throw Error(ErrorCode::KTooLarge,
                "k=" + std::to_string(k) + " needs more than " + std::to_string(n) + " points");
  }

  auto dist2 = [&](Index i, Index j) {
    const double dx = points[i][0] - points[j][0];
    const double dy = points[i][1] - points[j][1];
    return dx * dx + dy * dy;
  };

  std::vector<Edge> edges;
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    order.clear();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      if (dist2(i, j) == 0.0) {
        throw Error(ErrorCode::DuplicatePoints,
                    "points " + std::to_string(std::min(i, j)) + " and " +
                        std::to_string(std::max(i, j)) + " coincide");
      }
      order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index a, Index b) {
      const double da = dist2(i, a);
      const double db = dist2(i, b);
      return da < db || (da == db && a < b);
    });
    for (Index r = 0; r < k; ++r) edges.push_back({i, order[static_cast<std::size_t>(r)], 1.0});
  }
  // Both directions of a mutual pair carry weight 1, so the OR rule is just
  // deduplication in build_graph.
  return build_graph(edges, n);
}

std::vector<Index> bfs_distances(const Graph& g, Index source) {
  check_node(source, g.size());
  std::vector<Index> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<Index> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    for (Index v : g.neighbors(u)) {
      auto& dv = dist[static_cast<std::size_t>(v)];
      if (dv < 0) {
        dv = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

Index path_distance(const Graph& g, Index i, Index j) {
  check_node(j, g.size());
  return bfs_distances(g, i)[static_cast<std::size_t>(j)];
}

std::pair<Index, Index> diameter_endpoints(const Graph& g) {
  std::pair<Index, Index> best{0, 0};
  Index best_dist = 0;
  for (Index s = 0; s < g.size(); ++s) {
    const auto dist = bfs_distances(g, s);
    for (Index t = 0; t < g.size(); ++t) {
      if (dist[static_cast<std::size_t>(t)] > best_dist) {
        best_dist = dist[static_cast<std::size_t>(t)];
        best = {s, t};
      }
    }
  }
  return best;
}

Index diameter(const Graph& g) {
  const auto [a, b] = diameter_endpoints(g);
  return path_distance(g, a, b);
}

Bipartition is_bipartite(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.size()), -1);
  std::queue<Index> frontier;
  color[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    const int cu = color[static_cast<std::size_t>(u)];
    for (Index v : g.neighbors(u)) {
      auto& cv = color[static_cast<std::size_t>(v)];
      if (cv < 0) {
        cv = 1 - cu;
        frontier.push(v);
      } else if (cv == cu) {
        return {};
      }
    }
  }
  return {true, std::move(color)};
}

// --- file formats -----------------------------------------------------------

void write_edge_csv(const Graph& g, const std::filesystem::path& csv,
                    const std::optional<std::filesystem::path>& sidecar) {
  std::ofstream out(csv);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + csv.string());
  out << "src,dst,weight\n" << std::setprecision(17);
  for (const auto& e : g.edges()) out << e.src << ',' << e.dst << ',' << e.weight << '\n';
  if (sidecar) {
    std::ofstream side(*sidecar);
    if (!side) throw Error(ErrorCode::Io, "cannot write " + sidecar->string());
    side << nlohmann::json{{"n", g.size()}}.dump() << '\n';
  }
}

Graph read_edge_csv(const std::filesystem::path& csv,
                    const std::optional<std::filesystem::path>& sidecar) {
  std::ifstream in(csv);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + csv.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("src,dst,weight", 0) != 0) {
    throw Error(ErrorCode::Io, csv.string() + ": expected header src,dst,weight");
  }
  std::vector<Edge> edges;
  Index max_index = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw Error(ErrorCode::Io, csv.string() + ": bad row '" + line + "'");
    const auto src = static_cast<Index>(parse_double(f[0], csv));
    const auto dst = static_cast<Index>(parse_double(f[1], csv));
    edges.push_back({src, dst, parse_double(f[2], csv)});
    max_index = std::max({max_index, src, dst});
  }

  Index n = max_index + 1;
  if (sidecar && std::filesystem::exists(*sidecar)) {
    std::ifstream side(*sidecar);
    try {
      n = nlohmann::json::parse(side).at("n").get<Index>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Io, sidecar->string() + ": " + e.what());
    }
  }
  return build_graph(edges, n);
}

void write_points_csv(std::span<const Point2> points, const std::filesystem::path& csv) {
  std::ofstream out(csv);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + csv.string());
  out << "x,y\n" << std::setprecision(17);
  for (const auto& p : points) out << p[0] << ',' << p[1] << '\n';
}

std::vector<Point2> read_points_csv(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + csv.string());
  std::vector<Point2> points;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (first && line.rfind("x,y", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw Error(ErrorCode::Io, csv.string() + ": bad row '" + line + "'");
    points.push_back({parse_double(f[0], csv), parse_double(f[1], csv)});
  }
  return points;
}

}  // namespace blis
