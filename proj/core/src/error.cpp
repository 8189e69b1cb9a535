#include "eit/error.hpp"

namespace eit {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Config: return "ConfigError";
    case Errc::InvalidScenario: return "InvalidScenario";
    case Errc::UnmeshableGeometry: return "UnmeshableGeometry";
    case Errc::DegenerateGeometry: return "DegenerateGeometry";
    case Errc::TagMismatch: return "TagMismatch";
    case Errc::BoundaryMismatch: return "BoundaryMismatch";
    case Errc::SolveFailure: return "SolveFailure";
    case Errc::SingularCoupledSystem: return "SingularCoupledSystem";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::SourceTooCloseToInterface: return "SourceTooCloseToInterface";
    case Errc::WindowCrossesInterface: return "WindowCrossesInterface";
    case Errc::InsufficientRange: return "InsufficientRange";
    case Errc::ZeroData: return "ZeroData";
    case Errc::NonCurlFree: return "NonCurlFree";
    case Errc::Io: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category(Errc code) {
  switch (code) {
    case Errc::Config:
    case Errc::InvalidScenario:
      return ErrorCategory::Config;
    case Errc::UnmeshableGeometry:
    case Errc::DegenerateGeometry:
    case Errc::TagMismatch:
    case Errc::BoundaryMismatch:
    case Errc::SourceTooCloseToInterface:
    case Errc::WindowCrossesInterface:
    case Errc::EmptyWindow:
      return ErrorCategory::Geometry;
    case Errc::SolveFailure:
    case Errc::SingularCoupledSystem:
      return ErrorCategory::Solver;
    case Errc::Io:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Usage;
  }
}

}  // namespace eit
