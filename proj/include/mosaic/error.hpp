#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mosaic {

enum class ErrorCode {
  MalformedInput,
  UnknownElement,
  PartitionViolation,
  DuplicateId,
  CardinalityMismatch,
  InvalidArgument,
  EmptyRestriction,
  MissingCenter,
  GridTooSmall,
  Infeasible,
  NoIncumbent,
  SolverFailure,
  NonIntegralSolution,
  OccupancyViolation,
  TooLarge,
  EmptyRegion,
  PaletteExhausted,
  UnknownSet,
  MissingFlows,
  ContiguityViolation,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mosaic
