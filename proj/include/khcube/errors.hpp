#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace khcube {

enum class ErrorCode {
  MalformedPD,
  InconsistentArcs,
  UnknownCrossingId,
  UnorientedDiagram,
  OrientationDependentWrithe,
  NotAPseudoDiagram,
  OutOfDomain,
  NotADifferential,
  SignInconsistency,
  NotFiltered,
  OrderViolation,
  OddSelfIntersection,
  MultiComponent,
  InfeasibleParity,
  InvalidArgument,
  // Violations of invariants the engine itself guarantees.
  InternalInvariant,
};

std::string_view error_name(ErrorCode code);

// Input errors map to CLI exit code 1, internal invariant violations to 2.
bool is_internal(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& context)
      : std::runtime_error(std::string(error_name(code)) + ": " + context), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace khcube
