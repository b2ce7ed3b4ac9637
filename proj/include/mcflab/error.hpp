#pragma once

#include <stdexcept>
#include <string>

namespace mcflab {

enum class ErrorCode {
  InvalidArgument,
  ParamViolation,
  CapacityViolation,
  EmptyCycle,
  ZeroResidualCapacity,
  Infeasible,
  IterationCapExceeded,
  UnboundedCycle,
  InfeasibleStructure,
  NotConnected,
  TooLarge,
  ParseError,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mcflab
