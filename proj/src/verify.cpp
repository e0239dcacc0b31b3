#include "blis/verify.hpp"

#include "blis/blis.hpp"
#include "blis/counterexamples.hpp"
#include "blis/error.hpp"
#include "blis/pipeline.hpp"
#include "blis/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace blis {

namespace {

using nlohmann::json;

constexpr double kFrameSlack = 1e-9;
constexpr double kIsometryTol = 1e-8;
constexpr double kEquivarianceTol = 1e-7;
constexpr double kAggregateTol = 1e-8;
constexpr double kInversionTol = 1e-7;
constexpr double kOracleTol = 1e-9;
constexpr double kScatterTol = 1e-8;

struct GraphSetup {
  const testkit::ZooGraph& zoo;
  DiffusionOperator op;
  WaveletFrame frame;
};

WaveletFrame make_frame(const DiffusionOperator& op, const VerifyConfig& config) {
  auto frame = build_frame(op, dyadic_scales(config.J), config.family);
  if (config.corrupt_factor != 1.0) frame = frame.with_scaled_filter(0, config.corrupt_factor);
  return frame;
}

json probe_json(const testkit::ProbeReport& r) {
  json j{{"trials", r.trials}, {"worst_margin", r.worst_margin}};
  if (r.failing_trial) {
    j["failing_trial"] = *r.failing_trial;
    j["failing_seed"] = *r.failing_seed;
  }
  return j;
}

CheckResult frame_bounds_check(const GraphSetup& s, const VerifyConfig& config) {
  const auto& b = s.frame.bounds();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const auto report = testkit::random_probe_suite(
      [&](Rng& rng, int) {
        const Eigen::VectorXd x = random_normal_vector(s.frame.size(), rng);
        const double ratio = frame_energy(s.frame, x) / weighted_norm_sq(x, s.frame.weight());
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        const double margin = std::min(ratio - (b.lower - kFrameSlack), (b.upper + kFrameSlack) - ratio);
        return testkit::ProbeOutcome{margin >= 0.0, margin};
      },
      config.probes, derive_seed(config.seed, 1));
  const bool upper_ok = b.upper <= 1.0 + 1e-10;
  CheckResult r{s.zoo.name, "frame_bounds", report.passed && upper_ok, false, "", probe_json(report)};
  r.measured["c"] = b.lower;
  r.measured["C"] = b.upper;
  r.measured["min_ratio"] = lo;
  r.measured["max_ratio"] = hi;
  if (!upper_ok) r.detail = "upper frame bound exceeds 1";
  if (!report.passed) r.detail = "Rayleigh quotient outside [c, C]";
  return r;
}

CheckResult energy_check(const GraphSetup& s, const VerifyConfig& config) {
  const auto& b = s.frame.bounds();
  const int m = config.order;
  const double lo_bound = std::pow(b.lower, m);
  const double hi_bound = std::pow(b.upper, m);
  const bool exact = s.frame.family() == FrameFamily::W1;
  const auto report = testkit::random_probe_suite(
      [&](Rng& rng, int) {
        const Eigen::VectorXd x = random_normal_vector(s.frame.size(), rng);
        const double ratio =
            mixed_norm_sq(blis_coeffs(s.frame, x, m), s.frame.weight()) / weighted_norm_sq(x, s.frame.weight());
        const double margin = exact ? kIsometryTol - std::abs(ratio - 1.0)
                                    : std::min(ratio - lo_bound * (1.0 - kFrameSlack),
                                               hi_bound * (1.0 + kFrameSlack) - ratio);
        return testkit::ProbeOutcome{margin >= 0.0, margin};
      },
      config.probes, derive_seed(config.seed, 2));
  CheckResult r{s.zoo.name, "energy", report.passed, false, "", probe_json(report)};
  r.measured["lower"] = lo_bound;
  r.measured["upper"] = hi_bound;
  r.measured["order"] = m;
  if (!report.passed) r.detail = exact ? "W1 energy not preserved" : "energy outside [c^m, C^m]";
  return r;
}

CheckResult bilipschitz_check(const GraphSetup& s, const VerifyConfig& config) {
  const auto& b = s.frame.bounds();
  const int m = config.order;
  const double lo_bound = std::pow(b.lower / 2.0, m);
  const double hi_bound = std::pow(b.upper, m);
  const auto report = testkit::random_probe_suite(
      [&](Rng& rng, int) {
        const Eigen::VectorXd x = random_normal_vector(s.frame.size(), rng);
        const Eigen::VectorXd y = random_normal_vector(s.frame.size(), rng);
        const double ratio = mixed_distance_sq(blis_coeffs(s.frame, x, m), blis_coeffs(s.frame, y, m),
                                               s.frame.weight()) /
                             weighted_norm_sq(x - y, s.frame.weight());
        const double margin =
            std::min(ratio - lo_bound * (1.0 - kFrameSlack), hi_bound * (1.0 + kFrameSlack) - ratio);
        return testkit::ProbeOutcome{margin >= 0.0, margin};
      },
      config.probes, derive_seed(config.seed, 3));
  CheckResult r{s.zoo.name, "bilipschitz", report.passed, false, "", probe_json(report)};
  r.measured["lower"] = lo_bound;
  r.measured["upper"] = hi_bound;
  if (!report.passed) r.detail = "distance ratio outside [(c/2)^m, C^m]";
  return r;
}

CheckResult equivariance_check(const GraphSetup& s, const VerifyConfig& config) {
  const int m = config.order;
  double worst = 0.0;
  double worst_aggregate = 0.0;
  const auto report = testkit::random_probe_suite(
      [&](Rng& rng, int) {
        const auto perm = testkit::random_permutation(s.frame.size(), rng);
        const Graph pg = s.zoo.graph.permuted(perm);
        const auto pop = make_diffusion(pg, s.op.weight.permuted(perm));
        const auto pframe = make_frame(pop, config);
        const Eigen::VectorXd x = random_normal_vector(s.frame.size(), rng);
        Eigen::VectorXd px(x.size());
        for (Index i = 0; i < x.size(); ++i) px(perm[static_cast<std::size_t>(i)]) = x(i);

        const auto base = blis_coeffs(s.frame, x, m);
        const auto moved = blis_coeffs(pframe, px, m);
        double dev = 0.0;
        for (Index i = 0; i < base.values.rows(); ++i) {
          const Index pi = perm[static_cast<std::size_t>(i)];
          dev = std::max(dev, (moved.values.row(pi) - base.values.row(i)).cwiseAbs().maxCoeff());
        }
        const double agg = (aggregate_first_moment(moved) - aggregate_first_moment(base)).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
        worst_aggregate = std::max(worst_aggregate, agg);
        const double margin = std::min(kEquivarianceTol - dev, kAggregateTol - agg);
        return testkit::ProbeOutcome{margin >= 0.0, margin};
      },
      config.permutations, derive_seed(config.seed, 4));
  CheckResult r{s.zoo.name, "equivariance", report.passed, false, "", probe_json(report)};
  r.measured["max_entry_deviation"] = worst;
  r.measured["max_aggregate_deviation"] = worst_aggregate;
  if (!report.passed) r.detail = "permuted coefficients differ";
  return r;
}

CheckResult inversion_check(const GraphSetup& s, const VerifyConfig& config) {
  double worst = 0.0;
  const auto report = testkit::random_probe_suite(
      [&](Rng& rng, int) {
        const Eigen::VectorXd x = random_normal_vector(s.frame.size(), rng);
        const Eigen::MatrixXd back = invert_layer(s.frame, blis_layer(s.frame, x));
        const double err = (back.col(0) - x).norm() / x.norm();
        worst = std::max(worst, err);
        return testkit::ProbeOutcome{err < kInversionTol, kInversionTol - err};
      },
      config.probes, derive_seed(config.seed, 5));
  CheckResult r{s.zoo.name, "inversion", report.passed, false, "", probe_json(report)};
  r.measured["max_relative_error"] = worst;
  if (!report.passed) r.detail = "layer round trip failed";
  return r;
}

CheckResult oracle_check(const GraphSetup& s, const VerifyConfig& config) {
  CheckResult r{s.zoo.name, "oracle", true, false, "", json::object()};
  if (config.J > 2 || config.order > 2) {
    r.skipped = true;
    r.detail = "brute-force oracle limited to J <= 2, m <= 2";
    return r;
  }
  Rng rng(derive_seed(config.seed, 6));
  const Eigen::VectorXd x = random_normal_vector(s.frame.size(), rng);
  const auto coeffs = blis_coeffs(s.frame, x, config.order);
  double worst = 0.0;
  for (std::size_t p = 0; p < blis_path_count(config.J, config.order); ++p) {
    const auto path = decode_path(p, config.order, config.J);
    std::vector<Eigen::MatrixXd> mats;
    std::vector<testkit::Nonlinearity> nl;
    for (const auto& step : path) {
      mats.push_back(s.frame.filter(step.j));
      nl.push_back(step.k == 1 ? testkit::Nonlinearity::Relu : testkit::Nonlinearity::ReflectedRelu);
    }
    const auto brute = testkit::brute_chain(mats, nl, x);
    worst = std::max(worst, (brute - coeffs.values.col(static_cast<Index>(p))).cwiseAbs().maxCoeff());
  }
  r.passed = worst <= kOracleTol;
  r.measured["max_deviation"] = worst;
  r.measured["paths"] = blis_path_count(config.J, config.order);
  if (!r.passed) r.detail = "brute chain disagrees with blis_coeffs";
  return r;
}

CheckResult counterexample_check(const GraphSetup& s, const VerifyConfig& config) {
  CheckResult r{s.zoo.name, "counterexample", true, false, "", json::object()};
  const auto scales = dyadic_scales(config.J);
  std::optional<CounterexamplePair> pair;
  if (is_bipartite(s.zoo.graph).bipartite) {
    pair = bipartite_counterexample(s.zoo.graph, s.op, scales);
  } else if (diameter(s.zoo.graph) >= 2 * scales.max_scale() + 1) {
    pair = diameter_counterexample(s.zoo.graph, s.op, scales);
  } else {
    r.skipped = true;
    r.detail = "graph is neither bipartite nor of diameter > 2 s_{J+1}";
    return r;
  }
  // Scattering identity holds for the polynomial (W2) frame the pair is built against.
  const auto w2 = build_frame(s.op, scales, FrameFamily::W2, FilterRoute::Powers);
  const auto dev = verify_scatter_identical(w2, *pair, config.order);
  const auto sep = verify_blis_separates(s.frame, *pair, config.order);
  const double distinct = std::min((pair->x1 - pair->x2).norm(), (pair->x1 + pair->x2).norm());
  r.passed = dev.max_deviation < kScatterTol && distinct > 0.1 &&
             sep.distance_sq >= sep.lower_bound * (1.0 - kFrameSlack) && sep.distance_sq > 0.0;
  r.measured = {{"regime", std::string(to_string(pair->regime))},
                {"scatter_max_deviation", dev.max_deviation},
                {"zeroth_order_raw_deviation", dev.zeroth_raw},
                {"min_distance_up_to_sign", distinct},
                {"blis_distance_sq", sep.distance_sq},
                {"blis_lower_bound", sep.lower_bound},
                {"construction_residual", pair->residual}};
  if (!r.passed) r.detail = "constructed pair not scattering-identical or not BLIS-separated";
  return r;
}

CheckResult guarded(const std::string& graph, const std::string& name, const std::function<CheckResult()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return CheckResult{graph, name, false, false, std::string(to_string(e.code())) + ": " + e.what(),
                       json::object()};
  }
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.skipped; });
}

json VerifyReport::to_json(const VerifyConfig& config) const {
  json out;
  out["config"] = {{"frame", std::string(blis::to_string(config.family))},
                   {"J", config.J},
                   {"m", config.order},
                   {"alpha", config.alpha},
                   {"seed", config.seed},
                   {"probes", config.probes},
                   {"permutations", config.permutations},
                   {"corrupt_factor", config.corrupt_factor}};
  out["graphs"] = graphs;
  out["checks"] = json::array();
  int failed = 0;
  int skipped = 0;
  for (const auto& c : checks) {
    out["checks"].push_back({{"graph", c.graph},
                             {"check", c.name},
                             {"status", c.skipped ? "skipped" : (c.passed ? "pass" : "fail")},
                             {"detail", c.detail},
                             {"measured", c.measured}});
    failed += (!c.passed && !c.skipped) ? 1 : 0;
    skipped += c.skipped ? 1 : 0;
  }
  out["summary"] = {{"total", checks.size()}, {"failed", failed}, {"skipped", skipped}, {"passed", passed()}};
  return out;
}

VerifyReport run_verification(const VerifyConfig& config) {
  if (config.J < 0) throw Error(ErrorCode::InvalidArgument, "J must be nonnegative");
  if (config.order < 1) throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
  if (config.probes < 1 || config.permutations < 1) {
    throw Error(ErrorCode::InvalidArgument, "probe counts must be positive");
  }
  VerifyReport report;
  report.graphs = json::object();
  for (const auto& zoo : testkit::graph_zoo()) {
    const auto weight = WeightVector::degree_preset(zoo.graph, config.alpha);
    auto op = make_diffusion(zoo.graph, weight);
    auto frame = make_frame(op, config);
    const GraphSetup setup{zoo, std::move(op), std::move(frame)};
    report.graphs[zoo.name] = {{"nodes", zoo.graph.size()},
                               {"edges", zoo.graph.edge_count()},
                               {"diameter", diameter(zoo.graph)},
                               {"bipartite", is_bipartite(zoo.graph).bipartite},
                               {"c", setup.frame.bounds().lower},
                               {"C", setup.frame.bounds().upper}};

    using Check = CheckResult (*)(const GraphSetup&, const VerifyConfig&);
    const std::pair<const char*, Check> battery[] = {
        {"frame_bounds", frame_bounds_check}, {"energy", energy_check},
        {"bilipschitz", bilipschitz_check},   {"equivariance", equivariance_check},
        {"inversion", inversion_check},       {"oracle", oracle_check},
        {"counterexample", counterexample_check},
    };
    for (const auto& [name, fn] : battery) {
      report.checks.push_back(guarded(zoo.name, name, [&] { return fn(setup, config); }));
    }
  }
  return report;
}

}  // namespace blis
