#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "eit/point.hpp"

namespace eit {

using Complex = std::complex<double>;

/// Disk of the given radius centred at the origin.
struct DiskDomain {
  double radius = 1.0;
};

struct RectangleDomain {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
};

using DomainShape = std::variant<DiskDomain, RectangleDomain>;

/// Annular band r_in <= r < r_out around the origin.
struct BandRegion {
  double r_in = 0.0;
  double r_out = std::numeric_limits<double>::infinity();
};

/// Angular sector [theta_begin, theta_end) intersected with a band.
struct SectorRegion {
  double theta_begin = 0.0;
  double theta_end = kTwoPi;
  double r_in = 0.0;
  double r_out = std::numeric_limits<double>::infinity();
};

enum class Axis { X, Y };

/// Half plane {coord < threshold} (lower) or {coord >= threshold}.
struct HalfPlaneRegion {
  Axis axis = Axis::X;
  double threshold = 0.0;
  bool lower = true;
};

using RegionShape = std::variant<BandRegion, SectorRegion, HalfPlaneRegion>;

struct RegionSpec {
  RegionShape shape;
  double conductivity = 1.0;
};

struct ObstacleSpec {
  Point center;
  double radius = 0.0;
};

struct SoundSoft {};

/// gamma d_nu u + i lambda u = 0, nu pointing into the obstacle.
struct Impedance {
  Complex lambda{0.0, 0.0};
};

using ObstacleBC = std::variant<SoundSoft, Impedance>;

/// Boundary arc given by a polar-angle interval measured from the domain
/// centre. A span of 2pi or more selects the full boundary.
struct ArcSpec {
  double begin = 0.0;
  double end = kTwoPi;

  static ArcSpec full() { return {0.0, kTwoPi}; }
  double span() const { return end - begin; }
  bool is_full() const { return span() >= kTwoPi - 1e-12; }
  /// Closed-interval membership with a small angular tolerance.
  bool contains(double theta, double tol = 1e-12) const;
  /// Open-interval membership (endpoints excluded).
  bool contains_strictly(double theta, double tol = 1e-12) const;
};

struct Scenario {
  DomainShape domain = DiskDomain{};
  std::vector<RegionSpec> regions;
  std::optional<ObstacleSpec> obstacle;
  ObstacleBC obstacle_bc = SoundSoft{};
  ArcSpec gamma_arc = ArcSpec::full();
  /// Declared ellipticity constant c0; derived from the conductivities
  /// when absent.
  std::optional<double> ellipticity;

  /// Throws Error(InvalidScenario) when an invariant is violated.
  void validate() const;

  /// Region index under the half-open convention, or nullopt when p is in
  /// no region (outside the domain, inside the obstacle, or a tiling gap).
  std::optional<std::size_t> region_of(Point p) const;
  std::size_t region_count(Point p) const;

  bool in_domain(Point p) const;
  bool in_obstacle(Point p) const;
  bool in_solution_domain(Point p) const { return in_domain(p) && !in_obstacle(p); }

  double ellipticity_constant() const;
  double min_conductivity() const;
  double max_conductivity() const;
  bool is_sound_soft() const { return std::holds_alternative<SoundSoft>(obstacle_bc); }

  Point centre() const;
  bool is_disk() const { return std::holds_alternative<DiskDomain>(domain); }
  /// Point of the outer boundary hit by the ray from the centre at `angle`.
  Point boundary_point(double angle) const;
  /// Outward unit normal of the outer boundary at a boundary point.
  Point outward_normal(Point on_boundary) const;
  /// Distance from p to the closed domain (0 inside).
  double distance_outside(Point p) const;
  /// Distance from an interior p to the outer boundary.
  double distance_to_boundary(Point p) const;
  double area() const;
};

}  // namespace eit
