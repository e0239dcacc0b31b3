#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blis {

enum class ErrorCode {
  // graph
  DisconnectedGraph,
  SelfLoop,
  NegativeWeight,
  DuplicateEdgeConflict,
  InvalidNode,
  DuplicatePoints,
  KTooLarge,
  // operators
  EigSolverFailure,
  SpectrumOutOfRange,
  InvalidG,
  NonPositiveWeight,
  LengthMismatch,
  // wavelets / transforms
  NegativeUnderSqrt,
  BadPathIndex,
  OrderTooLarge,
  ShapeMismatch,
  // counterexamples
  NotBipartite,
  EigenvalueMissing,
  DiameterTooSmall,
  SetsTooClose,
  // data + learning
  GraphDisconnected,
  DegenerateLabels,
  DimMismatch,
  InvalidArgument,
  Io,
  MissingDataset,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blis
