#include "blis/blis.hpp"
#include "blis/counterexamples.hpp"
#include "blis/scattering.hpp"
#include "blis/testkit.hpp"

#include "helpers.hpp"

#include <algorithm>

using namespace blis;

namespace {

WaveletFrame w2_frame(const DiffusionOperator& op, int J) {
  return build_frame(op, dyadic_scales(J), FrameFamily::W2, FilterRoute::Powers);
}

}  // namespace

TEST_CASE("K2 bipartite pair") {
  const auto g = testkit::complete_graph(2);
  const auto op = make_diffusion(g);
  const auto pair = bipartite_counterexample(g, op, dyadic_scales(0));
  CHECK(pair.regime == Regime::Bipartite);
  const double s = std::sqrt(2.0);
  // {x1, x2} = {(s, 0), (0, s)} up to which eigenvector sign the solver returns.
  CHECK(std::abs(pair.x1.cwiseAbs().maxCoeff() - s) < 1e-12);
  CHECK(std::abs(pair.x2.cwiseAbs().maxCoeff() - s) < 1e-12);
  CHECK(std::abs(pair.x1.dot(pair.x2)) < 1e-12);
  const auto frame = w2_frame(op, 0);
  const Eigen::VectorXd m1 = frame.apply_filter(0, pair.x1).col(0).cwiseAbs();
  const Eigen::VectorXd m2 = frame.apply_filter(0, pair.x2).col(0).cwiseAbs();
  CHECK(max_abs_diff(m1, m2) < 1e-12);
  CHECK(max_abs_diff(m1, pair.u2.cwiseAbs()) < 1e-12);
  CHECK(pair.residual < 1e-12);

  const auto sep = verify_blis_separates(build_frame(op, dyadic_scales(0), FrameFamily::W1), pair, 1);
  CHECK(sep.distance_sq >= 0.5 * sep.input_distance_sq * (1 - 1e-9));
  CHECK(sep.distance_sq > 0.0);
}

TEST_CASE("C6 bipartite pair has identical first-layer moduli") {
  const auto g = testkit::cycle_graph(6);
  for (double alpha : {-0.5, 0.0, 0.5}) {
    const auto op = make_diffusion(g, WeightVector::degree_preset(g, alpha));
    const auto pair = bipartite_counterexample(g, op, dyadic_scales(2));
    CHECK(pair.residual < 1e-8);
    const auto dev = verify_scatter_identical(w2_frame(op, 2), pair, 2);
    CHECK(dev.first_layer < 1e-9);
    CHECK(dev.max_deviation < 1e-8);
    CHECK((pair.x1 - pair.x2).norm() > 1e-6);
    CHECK((pair.x1 + pair.x2).norm() > 1e-6);
  }
}

TEST_CASE("bipartite errors") {
  const auto c3 = testkit::cycle_graph(3);
  CHECK_THROWS_CODE(bipartite_counterexample(c3, make_diffusion(c3), dyadic_scales(1)), ErrorCode::NotBipartite);
}

TEST_CASE("P20 diameter pair") {
  const auto g = testkit::path_graph(20);
  const auto op = make_diffusion(g);
  const auto pair = diameter_counterexample(g, op, dyadic_scales(2));
  CHECK(pair.regime == Regime::LargeDiameter);
  CHECK(pair.separation == 19);
  REQUIRE(pair.sets.size() == 2);
  CHECK(std::min(pair.sets[0][0], pair.sets[1][0]) == 0);
  CHECK(std::max(pair.sets[0][0], pair.sets[1][0]) == 19);
  CHECK(pair.residual < 1e-9);

  const auto frame = w2_frame(op, 2);
  const auto dev = verify_scatter_identical(frame, pair, 2);
  CHECK(dev.max_deviation < 1e-8);
  CHECK(dev.zeroth_modulus < 1e-12);
  CHECK(dev.zeroth_raw > 0.1);

  // Raw zeroth order differs by sign exactly on the S2 side.
  const Eigen::VectorXd z1 = frame.apply_filter(3, pair.x1).col(0);
  const Eigen::VectorXd z2 = frame.apply_filter(3, pair.x2).col(0);
  const auto s2_side = numeric_support(frame.apply_filter(3, Eigen::VectorXd::Unit(20, pair.sets[1][0])).col(0));
  for (Index i : s2_side) CHECK(z1(i) == doctest::Approx(-z2(i)));

  const auto sep = verify_blis_separates(frame, pair, 2);
  CHECK(sep.distance_sq >= sep.lower_bound);
  CHECK(sep.distance_sq <= sep.upper_bound);
}

TEST_CASE("wavelet supports of separated sets are disjoint") {
  const auto g = testkit::path_graph(20);
  const auto op = make_diffusion(g);
  const auto frame = w2_frame(op, 2);
  const auto pair = diameter_counterexample(g, op, dyadic_scales(2), std::vector<Index>{2}, std::vector<Index>{14});
  CHECK(pair.separation == 12);
  for (int j = 0; j <= frame.J(); ++j) {
    auto a = numeric_support(frame.apply_filter(j, Eigen::VectorXd::Unit(20, 2)).col(0));
    auto b = numeric_support(frame.apply_filter(j, Eigen::VectorXd::Unit(20, 14)).col(0));
    std::vector<Index> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    CHECK(common.empty());
    CHECK(a.back() <= 2 + 4);
  }
}

TEST_CASE("diameter errors") {
  const auto p5 = testkit::path_graph(5);
  CHECK_THROWS_CODE(diameter_counterexample(p5, make_diffusion(p5), dyadic_scales(2)), ErrorCode::DiameterTooSmall);
  const auto p20 = testkit::path_graph(20);
  const auto op = make_diffusion(p20);
  CHECK_THROWS_CODE(diameter_counterexample(p20, op, dyadic_scales(2), std::vector<Index>{0}, std::vector<Index>{8}),
                    ErrorCode::SetsTooClose);
  CHECK_THROWS_CODE(diameter_counterexample(p20, op, dyadic_scales(2), std::vector<Index>{0}, std::nullopt),
                    ErrorCode::InvalidArgument);
  const auto custom = make_diffusion(p20, WeightVector::ones(20), [](double t) { return (1 - t / 2) * (1 - t / 2); });
  CHECK_THROWS_CODE(diameter_counterexample(p20, custom, dyadic_scales(2)), ErrorCode::InvalidG);
}

TEST_CASE("three-set variant keeps aggregated zeroth order at |S1|") {
  const auto g = testkit::path_graph(20);
  const auto op = make_diffusion(g);
  const auto pair = three_set_counterexample(g, op, dyadic_scales(2), {0}, {9}, {18});
  const auto frame = w2_frame(op, 2);
  const auto c1 = scatter_all(frame, pair.x1, 2);
  const auto c2 = scatter_all(frame, pair.x2, 2);
  CHECK(scatter_aggregate(c1)(0) == doctest::Approx(1.0));
  CHECK(scatter_aggregate(c2)(0) == doctest::Approx(1.0));
  CHECK(verify_scatter_identical(frame, pair, 2).max_deviation < 1e-8);
  CHECK(max_abs_diff(scatter_aggregate(c1), scatter_aggregate(c2)) < 1e-9);

  const auto ones = make_diffusion(g, WeightVector::ones(20));
  CHECK_THROWS_CODE(three_set_counterexample(g, ones, dyadic_scales(2), {0}, {9}, {18}), ErrorCode::InvalidArgument);
}

TEST_CASE("unrelated signals are not scattering-identical") {
  const auto g = testkit::rnd100();
  const auto op = make_diffusion(g);
  Rng rng(17);
  CounterexamplePair fake;
  fake.x1 = random_normal_vector(100, rng);
  fake.x2 = random_normal_vector(100, rng);
  CHECK(verify_scatter_identical(w2_frame(op, 2), fake, 2).max_deviation > 1e-3);
  fake.x2 = fake.x1;
  CHECK(verify_blis_separates(w2_frame(op, 2), fake, 2).distance_sq == 0.0);
}

TEST_CASE("numeric support") {
  CHECK(numeric_support(Eigen::Vector4d(0, 1e-12, -0.5, 2)) == std::vector<Index>{2, 3});
}
