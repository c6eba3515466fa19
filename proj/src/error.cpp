#include "mosaic/error.hpp"

namespace mosaic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::PartitionViolation: return "PartitionViolation";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::MissingCenter: return "MissingCenter";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NoIncumbent: return "NoIncumbent";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorCode::OccupancyViolation: return "OccupancyViolation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::PaletteExhausted: return "PaletteExhausted";
    case ErrorCode::UnknownSet: return "UnknownSet";
    case ErrorCode::MissingFlows: return "MissingFlows";
    case ErrorCode::ContiguityViolation: return "ContiguityViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mosaic
