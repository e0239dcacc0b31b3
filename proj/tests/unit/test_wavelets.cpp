#include "blis/testkit.hpp"
#include "blis/wavelets.hpp"

#include "helpers.hpp"

using namespace blis;

TEST_CASE("dyadic scales") {
  CHECK(dyadic_scales(0).values() == std::vector<int>{0, 1});
  CHECK(dyadic_scales(2).values() == std::vector<int>{0, 1, 2, 4});
  CHECK(dyadic_scales(4).values() == std::vector<int>{0, 1, 2, 4, 8, 16});
  CHECK(dyadic_scales(4).J() == 4);
  CHECK(dyadic_scales(4).dyadic());
  CHECK_FALSE(ScaleSequence({0, 1, 3, 5}).dyadic());
  CHECK_THROWS_CODE(ScaleSequence({1, 2}), ErrorCode::InvalidArgument);
  CHECK_THROWS_CODE(ScaleSequence({0, 1, 1}), ErrorCode::InvalidArgument);
  CHECK_THROWS_CODE(dyadic_scales(-1), ErrorCode::InvalidArgument);
}

TEST_CASE("wavelet polynomials telescope to 1") {
  for (const auto& scales : {dyadic_scales(0), dyadic_scales(3), ScaleSequence({0, 1, 3, 7})}) {
    const auto polys = wavelet_polys(scales);
    CHECK(polys.size() == static_cast<std::size_t>(scales.J() + 2));
    for (int s = 0; s <= 200; ++s) {
      const double t = s / 200.0;
      double sum = 0.0;
      for (const auto& p : polys) sum += p(t);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
  const auto p = wavelet_polys(dyadic_scales(1));
  CHECK(p[0](0.0) == 1.0);
  CHECK(p[1](0.5) == doctest::Approx(0.25));
}

TEST_CASE("K2 W2 J=0 filters") {
  const auto op = make_diffusion(testkit::complete_graph(2));
  const auto frame = build_frame(op, dyadic_scales(0), FrameFamily::W2);
  CHECK(frame.filter_count() == 2);
  Eigen::Matrix2d psi0;
  psi0 << 0.5, -0.5, -0.5, 0.5;
  CHECK(max_abs_diff(frame.filter(0), psi0) < 1e-15);
  CHECK(max_abs_diff(frame.filter(1), Eigen::MatrixXd::Constant(2, 2, 0.5)) < 1e-15);
  const auto out = apply_frame(frame, Eigen::Vector2d(2, 0));
  CHECK(max_abs_diff(out[0], Eigen::Vector2d(1, -1)) < 1e-15);
  CHECK(max_abs_diff(out[1], Eigen::Vector2d(1, 1)) < 1e-15);
}

TEST_CASE("J=4 frames have six filters") {
  const auto op = make_diffusion(testkit::cycle_graph(6));
  CHECK(build_frame(op, dyadic_scales(4), FrameFamily::W2).filter_count() == 6);
  CHECK(build_frame(op, dyadic_scales(4), FrameFamily::W1).filter_count() == 6);
}

TEST_CASE("W1 is an isometry on the zoo") {
  Rng rng(5);
  for (const auto& z : testkit::graph_zoo()) {
    for (int J : {0, 2, 4}) {
      for (double alpha : {-0.5, 0.0, 0.5}) {
        CAPTURE(z.name);
        CAPTURE(J);
        const auto op = make_diffusion(z.graph, WeightVector::degree_preset(z.graph, alpha));
        const auto frame = build_frame(op, dyadic_scales(J), FrameFamily::W1);
        CHECK(frame.bounds().lower == 1.0);
        CHECK(frame.bounds().upper == 1.0);
        for (int t = 0; t < 10; ++t) {
          const Eigen::VectorXd x = random_normal_vector(z.graph.size(), rng);
          const double e = frame_energy(frame, x);
          const double n = weighted_norm_sq(x, op.weight);
          CHECK(std::abs(e - n) <= 1e-8 * n);
        }
      }
    }
  }
}

TEST_CASE("C4 W2 J=0 lower bound is 1/2") {
  const auto op = make_diffusion(testkit::cycle_graph(4));
  const auto b = compute_frame_bounds(op, dyadic_scales(0), FrameFamily::W2);
  CHECK(b.lower == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(universal_w2_lower_bound(dyadic_scales(0)) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("W2 bounds are attained by eigenvectors and bound random Rayleigh quotients") {
  Rng rng(9);
  for (const auto& z : testkit::graph_zoo()) {
    for (int J : {0, 2, 4}) {
      CAPTURE(z.name);
      CAPTURE(J);
      const auto op = make_diffusion(z.graph, WeightVector::degree_preset(z.graph, 0.25));
      const auto frame = build_frame(op, dyadic_scales(J), FrameFamily::W2);
      const auto b = frame.bounds();
      CHECK(b.upper <= 1.0 + 1e-10);
      CHECK(b.lower >= universal_w2_lower_bound(dyadic_scales(J)) - 1e-12);
      for (int t = 0; t < 20; ++t) {
        const Eigen::VectorXd x = random_normal_vector(z.graph.size(), rng);
        const double r = frame_energy(frame, x) / weighted_norm_sq(x, op.weight);
        CHECK(r >= b.lower - 1e-9);
        CHECK(r <= b.upper + 1e-9);
      }
      double lo = 2.0;
      double hi = 0.0;
      for (Index i = 0; i < op.size(); ++i) {
        const Eigen::VectorXd v = op.eigenvector(i);
        const double r = frame_energy(frame, v) / weighted_norm_sq(v, op.weight);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      CHECK(std::abs(lo - b.lower) < 1e-7);
      CHECK(std::abs(hi - b.upper) < 1e-7);
    }
  }
}

TEST_CASE("spectral and power routes agree") {
  const auto g = testkit::rnd100();
  const auto op = make_diffusion(g, WeightVector::degree_preset(g, 0.0));
  for (const auto& scales : {dyadic_scales(4), ScaleSequence({0, 1, 3, 6})}) {
    const auto a = build_frame(op, scales, FrameFamily::W2, FilterRoute::Spectral);
    const auto b = build_frame(op, scales, FrameFamily::W2, FilterRoute::Powers);
    for (int j = 0; j < a.filter_count(); ++j) CHECK(max_abs_diff(a.filter(j), b.filter(j)) < 1e-10);
  }
}

TEST_CASE("W1 filters square to W2 filters") {
  const auto op = make_diffusion(testkit::cycle_graph(6));
  const auto w1 = build_frame(op, dyadic_scales(2), FrameFamily::W1);
  const auto w2 = build_frame(op, dyadic_scales(2), FrameFamily::W2);
  for (int j = 0; j < w1.filter_count(); ++j) {
    CHECK(max_abs_diff(w1.filter(j) * w1.filter(j), w2.filter(j)) < 1e-10);
  }
}

TEST_CASE("matrix-free frame matches the dense W2 frame") {
  const auto g = testkit::rnd100();
  const auto w = WeightVector::degree_preset(g, -0.5);
  const auto dense = build_frame(make_diffusion(g, w), dyadic_scales(3), FrameFamily::W2);
  const auto lazy = build_frame_matrix_free(g, w, dyadic_scales(3));
  CHECK(lazy.matrix_free());
  Rng rng(2);
  const Eigen::MatrixXd x = Eigen::MatrixXd::NullaryExpr(100, 4, [&] { return standard_normal(rng); });
  const auto a = dense.apply_all(x);
  const auto b = lazy.apply_all(x);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(max_abs_diff(a[j], b[j]) < 1e-12);
  CHECK(lazy.bounds().upper == 1.0);
  CHECK(max_abs_diff(lazy.apply_filter(2, x), a[2]) < 1e-12);
}

TEST_CASE("scaled filter breaks the energy identity") {
  const auto op = make_diffusion(testkit::cycle_graph(6));
  const auto frame = build_frame(op, dyadic_scales(2), FrameFamily::W1).with_scaled_filter(0, 2.0);
  const Eigen::VectorXd x = Eigen::VectorXd::Unit(6, 0);
  CHECK(frame_energy(frame, x) > 1.01 * weighted_norm_sq(x, op.weight));
  CHECK_THROWS_CODE(frame.filter(9), ErrorCode::BadPathIndex);
  CHECK_THROWS_CODE(frame.apply_filter(0, Eigen::VectorXd::Ones(5)), ErrorCode::LengthMismatch);
}

TEST_CASE("frame family parsing") {
  CHECK(parse_frame_family("w1") == FrameFamily::W1);
  CHECK(parse_frame_family("W2") == FrameFamily::W2);
  CHECK_THROWS_CODE(parse_frame_family("w3"), ErrorCode::InvalidArgument);
}
