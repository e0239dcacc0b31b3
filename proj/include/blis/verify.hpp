#pragma once

#include "blis/wavelets.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace blis {

struct VerifyConfig {
  FrameFamily family = FrameFamily::W1;
  int J = 2;
  int order = 2;
  double alpha = -0.5;
  std::uint64_t seed = 0;
  int probes = 100;
  int permutations = 20;
  /// Scale filter 0 by this factor after building (fault injection); 1 = off.
  double corrupt_factor = 1.0;
};

struct CheckResult {
  std::string graph;
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;
  nlohmann::json measured;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  nlohmann::json graphs;  // per-graph metadata (c, C, n, ...)

  bool passed() const;
  nlohmann::json to_json(const VerifyConfig& config) const;
};

/// Runs the invariant battery on the graph zoo.
VerifyReport run_verification(const VerifyConfig& config);

}  // namespace blis
