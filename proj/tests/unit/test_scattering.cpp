#include "blis/scattering.hpp"
#include "blis/testkit.hpp"

#include "helpers.hpp"

using namespace blis;

TEST_CASE("path enumeration") {
  const auto paths = scatter_paths(4, 2);
  CHECK(paths.size() == 31);
  CHECK(paths[0].empty());
  CHECK(paths[1] == ScatterPath{0});
  CHECK(paths[6] == ScatterPath{0, 0});
  CHECK(paths[7] == ScatterPath{0, 1});
  CHECK(paths[11] == ScatterPath{1, 0});
  CHECK(scatter_paths(2, 3).size() == 1 + 3 + 9 + 27);
  CHECK(scatter_label({3, 1}) == "S[3,1]");
  CHECK(scatter_label({}) == "S[]");
}

TEST_CASE("K2 worked example") {
  const auto op = make_diffusion(testkit::complete_graph(2));
  const auto frame = build_frame(op, dyadic_scales(0), FrameFamily::W2);
  const Eigen::Vector2d x(2, 0);
  CHECK(max_abs_diff(scatter_U(frame, x, {0}), Eigen::Vector2d(1, 1)) < 1e-15);
  CHECK(max_abs_diff(scatter_U(frame, x, {}), x) == 0.0);
  const auto c = scatter_all(frame, x, 1);
  CHECK(c.values.cols() == 2);
  CHECK(max_abs_diff(c.values.col(0), Eigen::Vector2d(1, 1)) < 1e-15);
  CHECK(max_abs_diff(c.values.col(1), Eigen::Vector2d(1, 1)) < 1e-15);
  const auto agg = scatter_aggregate(c);
  CHECK(agg(0) == doctest::Approx(2.0));
  CHECK(agg(1) == doctest::Approx(2.0));
}

TEST_CASE("coefficients match explicit chains") {
  const auto op = make_diffusion(testkit::cycle_graph(6));
  const auto frame = build_frame(op, dyadic_scales(2), FrameFamily::W1);
  Rng rng(4);
  const Eigen::VectorXd x = random_normal_vector(6, rng);
  const auto c = scatter_all(frame, x, 2);
  CHECK(c.count(0) == 1);
  CHECK(c.count(1) == 3);
  CHECK(c.count(2) == 9);
  for (std::size_t p = 0; p < c.paths.size(); ++p) {
    const Eigen::VectorXd expected = frame.filter(3) * scatter_U(frame, x, c.paths[p]);
    CHECK(max_abs_diff(c.values.col(static_cast<Index>(p)), expected) < 1e-12);
  }
  const auto zero = scatter_all(frame, Eigen::VectorXd::Zero(6), 0);
  CHECK(zero.values.cols() == 1);
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scattering is sign blind") {
  const auto g = testkit::rnd100();
  const auto op = make_diffusion(g);
  const auto frame = build_frame(op, dyadic_scales(3), FrameFamily::W2);
  Rng rng(8);
  const Eigen::VectorXd x = random_normal_vector(100, rng);
  const auto a = scatter_all(frame, x, 2);
  const auto b = scatter_all(frame, -x, 2);
  CHECK(max_abs_diff(a.values.col(0), -b.values.col(0)) == 0.0);
  CHECK(max_abs_diff(a.values.rightCols(a.values.cols() - 1), b.values.rightCols(b.values.cols() - 1)) == 0.0);
}

TEST_CASE("modulus after a W1 wavelet is nonexpansive") {
  const auto g = testkit::rnd100();
  const auto op = make_diffusion(g, WeightVector::degree_preset(g, 0.0));
  const auto frame = build_frame(op, dyadic_scales(3), FrameFamily::W1);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd x = random_normal_vector(100, rng);
    const Eigen::VectorXd y = random_normal_vector(100, rng);
    for (int j = 0; j <= frame.J(); ++j) {
      const double lhs = weighted_norm(scatter_U(frame, x, {j}) - scatter_U(frame, y, {j}), op.weight);
      const double rhs = weighted_norm(frame.apply_filter(j, x - y).col(0), op.weight);
      CHECK(lhs <= rhs + 1e-12);
    }
  }
}

TEST_CASE("scattering errors") {
  const auto frame = build_frame(make_diffusion(testkit::cycle_graph(6)), dyadic_scales(2), FrameFamily::W2);
  CHECK_THROWS_CODE(scatter_U(frame, Eigen::VectorXd::Ones(6), {3}), ErrorCode::BadPathIndex);
  CHECK_THROWS_CODE(scatter_U(frame, Eigen::VectorXd::Ones(6), {-1}), ErrorCode::BadPathIndex);
  CHECK_THROWS_CODE(scatter_all(frame, Eigen::VectorXd::Ones(5), 1), ErrorCode::LengthMismatch);
  CHECK(modulus(Eigen::Vector3d(-1, 0, 2)) == Eigen::Vector3d(1, 0, 2));
}
