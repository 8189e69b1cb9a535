#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eit {

enum class Errc {
  InvalidArgument,
  Config,
  InvalidScenario,
  UnmeshableGeometry,
  DegenerateGeometry,
  TagMismatch,
  BoundaryMismatch,
  SolveFailure,
  SingularCoupledSystem,
  EmptyWindow,
  CoincidentPoints,
  SourceTooCloseToInterface,
  WindowCrossesInterface,
  InsufficientRange,
  ZeroData,
  NonCurlFree,
  Io,
};

/// Coarse grouping used by the command-line tool to pick exit codes.
enum class ErrorCategory { Usage, Config, Geometry, Solver, Io };

std::string_view to_string(Errc code);
ErrorCategory category(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace eit
