#include "blis/graph.hpp"
#include "blis/testkit.hpp"

#include "helpers.hpp"

#include <filesystem>

using namespace blis;

TEST_CASE("K2 edge list") {
  const std::vector<Edge> edges{{0, 1, 1.0}};
  const auto g = build_graph(edges, 2);
  CHECK(g.size() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 0) == 1.0);
  CHECK(g.weight(0, 0) == 0.0);
  CHECK(g.degrees()(0) == 1.0);
  CHECK(g.degrees()(1) == 1.0);
}

TEST_CASE("weighted degrees and adjacency") {
  const std::vector<Edge> edges{{0, 1, 2.0}, {1, 2, 0.5}};
  const auto g = build_graph(edges, 3);
  CHECK(g.degrees()(1) == doctest::Approx(2.5));
  const Eigen::MatrixXd A = g.dense_adjacency();
  CHECK(A(0, 1) == 2.0);
  CHECK(A(2, 1) == 0.5);
  CHECK(A(0, 2) == 0.0);
  CHECK(g.degree_power(-0.5)(1) == doctest::Approx(1.0 / std::sqrt(2.5)));
}

TEST_CASE("edge list validation") {
  CHECK_THROWS_CODE(build_graph(std::vector<Edge>{{0, 0, 1.0}, {0, 1, 1.0}}, 2), ErrorCode::SelfLoop);
  CHECK_THROWS_CODE(build_graph(std::vector<Edge>{{0, 1, -1.0}}, 2), ErrorCode::NegativeWeight);
  CHECK_THROWS_CODE(build_graph(std::vector<Edge>{{0, 1, 0.0}}, 2), ErrorCode::NegativeWeight);
  CHECK_THROWS_CODE(build_graph(std::vector<Edge>{{0, 1, 1.0}, {1, 0, 2.0}}, 2),
                    ErrorCode::DuplicateEdgeConflict);
  CHECK_THROWS_CODE(build_graph(std::vector<Edge>{{0, 5, 1.0}}, 2), ErrorCode::InvalidNode);
  CHECK_THROWS_CODE(build_graph(std::vector<Edge>{{0, 1, 1.0}}, 3), ErrorCode::DisconnectedGraph);
}

TEST_CASE("duplicate edges with equal weight merge") {
  const auto g = build_graph(std::vector<Edge>{{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}}, 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degrees()(1) == 2.0);
}

TEST_CASE("zoo diameters and bipartiteness") {
  for (const auto& z : testkit::graph_zoo()) {
    CAPTURE(z.name);
    if (z.expected_diameter >= 0) CHECK(diameter(z.graph) == z.expected_diameter);
    CHECK(is_bipartite(z.graph).bipartite == z.expected_bipartite);
  }
  const auto p = testkit::path_graph(20);
  CHECK(path_distance(p, 0, 19) == 19);
  const auto [a, b] = diameter_endpoints(p);
  CHECK(std::min(a, b) == 0);
  CHECK(std::max(a, b) == 19);
}

TEST_CASE("bipartite coloring is proper") {
  const auto g = testkit::cycle_graph(6);
  const auto bp = is_bipartite(g);
  REQUIRE(bp.coloring.has_value());
  for (const auto& e : g.edges()) {
    CHECK((*bp.coloring)[static_cast<std::size_t>(e.src)] != (*bp.coloring)[static_cast<std::size_t>(e.dst)]);
  }
  CHECK_FALSE(is_bipartite(testkit::cycle_graph(3)).coloring.has_value());
}

TEST_CASE("kNN on square corners resolves ties by index") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const auto g = knn_graph(pts, 1);
  CHECK(g.edge_count() == 3);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(0, 2) == 1.0);
  CHECK(g.weight(1, 3) == 1.0);
  CHECK(g.weight(2, 3) == 0.0);
}

TEST_CASE("kNN errors") {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}};
  CHECK_THROWS_CODE(knn_graph(pts, 3), ErrorCode::KTooLarge);
  const std::vector<Point2> dup{{0, 0}, {0, 0}, {0, 1}};
  CHECK_THROWS_CODE(knn_graph(dup, 1), ErrorCode::DuplicatePoints);
}

TEST_CASE("kNN graph is symmetric with degree at least k") {
  const auto g = testkit::rnd100();
  CHECK(g.size() == 100);
  for (Index i = 0; i < g.size(); ++i) CHECK(g.neighbors(i).size() >= 5);
  const Eigen::MatrixXd A = g.dense_adjacency();
  CHECK(max_abs_diff(A, A.transpose()) == 0.0);
}

TEST_CASE("permutation relabels edges") {
  const auto g = testkit::path_graph(4);
  const std::vector<Index> perm{2, 0, 3, 1};
  const auto pg = g.permuted(perm);
  for (const auto& e : g.edges()) {
    CHECK(pg.weight(perm[static_cast<std::size_t>(e.src)], perm[static_cast<std::size_t>(e.dst)]) == e.weight);
  }
  CHECK(pg.edge_count() == g.edge_count());
}

TEST_CASE("large graphs use sparse storage") {
  const auto small = testkit::path_graph(10);
  const auto large = testkit::path_graph(kDenseCutover + 10);
  CHECK(small.is_dense());
  CHECK_FALSE(large.is_dense());
  CHECK(large.weight(100, 101) == 1.0);
  CHECK(large.weight(100, 102) == 0.0);
  CHECK(large.sparse_adjacency().nonZeros() == 2 * static_cast<Index>(large.edge_count()));
}

TEST_CASE("edge and point CSV round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "blis_graph_io";
  std::filesystem::create_directories(dir);
  const auto g = build_graph(std::vector<Edge>{{0, 1, 0.25}, {1, 2, 3.0}}, 3);
  write_edge_csv(g, dir / "g.csv", dir / "g.json");
  const auto back = read_edge_csv(dir / "g.csv", dir / "g.json");
  CHECK(back.size() == 3);
  CHECK(back.weight(0, 1) == 0.25);
  CHECK(back.weight(2, 1) == 3.0);

  const std::vector<Point2> pts{{0.125, 0.5}, {1.0 / 3.0, 0.75}};
  write_points_csv(pts, dir / "p.csv");
  const auto pback = read_points_csv(dir / "p.csv");
  REQUIRE(pback.size() == 2);
  CHECK(pback[1][0] == 1.0 / 3.0);
  CHECK_THROWS_CODE(read_edge_csv(dir / "missing.csv"), ErrorCode::Io);
}
