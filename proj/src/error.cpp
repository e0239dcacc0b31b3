#include "blis/error.hpp"

namespace blis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DuplicateEdgeConflict: return "DuplicateEdgeConflict";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::EigSolverFailure: return "EigSolverFailure";
    case ErrorCode::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::InvalidG: return "InvalidG";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeUnderSqrt: return "NegativeUnderSqrt";
    case ErrorCode::BadPathIndex: return "BadPathIndex";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::EigenvalueMissing: return "EigenvalueMissing";
    case ErrorCode::DiameterTooSmall: return "DiameterTooSmall";
    case ErrorCode::SetsTooClose: return "SetsTooClose";
    case ErrorCode::GraphDisconnected: return "GraphDisconnected";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingDataset: return "MissingDataset";
  }
  return "Unknown";
}

}  // namespace blis
