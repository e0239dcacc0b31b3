#include "blis/operators.hpp"
#include "blis/testkit.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <numbers>

using namespace blis;

TEST_CASE("K2 normalized Laplacian") {
  const auto L = normalized_laplacian(testkit::complete_graph(2));
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  CHECK(max_abs_diff(L, expected) < 1e-15);
  const auto e = eig_sym(L);
  CHECK(e.eigenvalues(0) == 0.0);
  CHECK(e.eigenvalues(1) == 2.0);
}

TEST_CASE("C3 spectrum is {0, 1.5, 1.5}") {
  const auto e = eig_sym(normalized_laplacian(testkit::cycle_graph(3)));
  CHECK(e.eigenvalues(0) == doctest::Approx(0.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.5));
  CHECK(e.eigenvalues(2) == doctest::Approx(1.5));
}

TEST_CASE("C6 spectrum is 1 - cos(2 pi k / 6)") {
  const auto e = eig_sym(normalized_laplacian(testkit::cycle_graph(6)));
  std::vector<double> expected;
  for (int k = 0; k < 6; ++k) expected.push_back(1.0 - std::cos(2.0 * std::numbers::pi * k / 6.0));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 6; ++i) CHECK(e.eigenvalues(i) == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("zoo Laplacians are symmetric PSD with spectrum in [0, 2]") {
  for (const auto& z : testkit::graph_zoo()) {
    CAPTURE(z.name);
    const auto L = normalized_laplacian(z.graph);
    CHECK(max_abs_diff(L, L.transpose()) < 1e-14);
    const auto e = eig_sym(L);
    CHECK(e.eigenvalues.minCoeff() >= 0.0);
    CHECK(e.eigenvalues.maxCoeff() <= 2.0);
    CHECK(e.eigenvalues(0) == 0.0);
    CHECK((e.eigenvalues.array() == 2.0).any() == z.expected_bipartite);
    const Eigen::MatrixXd rebuilt =
        e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
    CHECK(max_abs_diff(rebuilt, L) < 1e-10);
  }
}

TEST_CASE("eig_sym rejects non-symmetric input") {
  Eigen::Matrix2d m;
  m << 1, 2, 0, 1;
  CHECK_THROWS_CODE(eig_sym(m), ErrorCode::InvalidArgument);
  Eigen::Matrix2d wide;
  wide << 3, 0, 0, 1;
  CHECK_THROWS_CODE(eig_sym(wide), ErrorCode::SpectrumOutOfRange);
}

TEST_CASE("spectral calculus applies functions to eigenvalues") {
  const auto L = normalized_laplacian(testkit::cycle_graph(6));
  const auto e = eig_sym(L);
  CHECK(max_abs_diff(spectral_apply(e, [](double t) { return t; }), L) < 1e-12);
  CHECK(max_abs_diff(spectral_apply(e, [](double t) { return t * t; }), L * L) < 1e-12);
  CHECK(max_abs_diff(spectral_apply(e, [](double) { return 1.0; }), Eigen::MatrixXd::Identity(6, 6)) < 1e-12);
}

TEST_CASE("canonical K with alpha = -1/2 is the lazy random walk") {
  for (const auto& z : testkit::graph_zoo()) {
    CAPTURE(z.name);
    const auto op = make_diffusion(z.graph);
    const Eigen::MatrixXd A = z.graph.dense_adjacency();
    const Eigen::VectorXd inv_d = z.graph.degrees().cwiseInverse();
    Eigen::MatrixXd P = 0.5 * A * inv_d.asDiagonal();
    P.diagonal().array() += 0.5;
    CHECK(max_abs_diff(op.K, P) < 1e-12);
    CHECK((op.K.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("K2 diffusion matrix") {
  const auto op = make_diffusion(testkit::complete_graph(2));
  CHECK(max_abs_diff(op.K, Eigen::MatrixXd::Constant(2, 2, 0.5)) < 1e-15);
  CHECK(op.eigenvalues()(0) == doctest::Approx(1.0));
  CHECK(op.eigenvalues()(1) == doctest::Approx(0.0));
}

TEST_CASE("T keeps exact zeros off the edge set") {
  const auto g = testkit::path_graph(20);
  const auto op = make_diffusion(g, WeightVector::ones(20));
  CHECK(op.diffusion.T(0, 5) == 0.0);
  CHECK(op.K(3, 10) == 0.0);
}

TEST_CASE("K is self-adjoint in the weighted inner product") {
  Rng rng(11);
  for (double alpha : {-0.5, -0.25, 0.0, 0.3, 0.5}) {
    CAPTURE(alpha);
    const auto g = testkit::rnd100();
    const auto op = make_diffusion(g, WeightVector::degree_preset(g, alpha));
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXd x = random_normal_vector(100, rng);
      const Eigen::VectorXd y = random_normal_vector(100, rng);
      const double lhs = weighted_inner(op.K * x, y, op.weight);
      const double rhs = weighted_inner(x, op.K * y, op.weight);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("apply_function matches matrix powers") {
  const auto g = testkit::cycle_graph(6);
  const auto op = make_diffusion(g, WeightVector::degree_preset(g, 0.25));
  CHECK(max_abs_diff(op.apply_function([](double t) { return t; }), op.K) < 1e-12);
  CHECK(max_abs_diff(op.apply_function([](double t) { return t * t * t; }), op.K * op.K * op.K) < 1e-12);
  const Eigen::VectorXd v = op.eigenvector(2);
  CHECK(max_abs_diff(op.K * v, op.eigenvalues()(2) * v) < 1e-12);
}

TEST_CASE("weighted norm") {
  const WeightVector w(Eigen::Vector2d(0.5, 2.0));
  CHECK(weighted_norm_sq(Eigen::Vector2d(2, 3), w) == doctest::Approx(20.0));
  CHECK(weighted_norm(Eigen::Vector2d(2, 3), w) == doctest::Approx(std::sqrt(20.0)));
  CHECK_THROWS_CODE(weighted_norm_sq(Eigen::Vector3d(1, 2, 3), w), ErrorCode::LengthMismatch);
}

TEST_CASE("weights must be positive") {
  CHECK_THROWS_CODE(WeightVector(Eigen::Vector2d(1.0, 0.0)), ErrorCode::NonPositiveWeight);
  CHECK_THROWS_CODE(WeightVector(Eigen::Vector2d(1.0, -2.0)), ErrorCode::NonPositiveWeight);
  CHECK_THROWS_CODE(WeightVector::degree_preset(testkit::path_graph(3), 0.75), ErrorCode::InvalidArgument);
  const auto w = WeightVector::degree_preset(testkit::path_graph(3), 0.5);
  CHECK(w.values()(1) == doctest::Approx(2.0));
  CHECK(w.values()(0) == doctest::Approx(1.0));
}

TEST_CASE("custom g") {
  const auto g = testkit::cycle_graph(6);
  const auto square = [](double t) { return (1.0 - t / 2.0) * (1.0 - t / 2.0); };
  const auto op = make_diffusion(g, WeightVector::ones(6), square);
  CHECK_FALSE(op.diffusion.canonical);
  const auto canon = make_diffusion(g, WeightVector::ones(6));
  CHECK(max_abs_diff(op.K, canon.K * canon.K) < 1e-12);

  const auto e = eig_sym(normalized_laplacian(g));
  CHECK_THROWS_CODE(diffusion_T(e, [](double t) { return 2.0 - t; }), ErrorCode::InvalidG);
  CHECK_THROWS_CODE(diffusion_T(e, [](double t) { return std::cos(std::numbers::pi * t) * (1 - t / 2); }),
                    ErrorCode::InvalidG);
}

TEST_CASE("sparse diffusion matches dense K") {
  const auto g = testkit::rnd100();
  const auto w = WeightVector::degree_preset(g, 0.2);
  const auto op = make_diffusion(g, w);
  const SparseDiffusion sp(g, w);
  Rng rng(3);
  const Eigen::MatrixXd x = Eigen::MatrixXd::NullaryExpr(100, 3, [&] { return standard_normal(rng); });
  CHECK(max_abs_diff(sp.apply(x), op.K * x) < 1e-12);
}
