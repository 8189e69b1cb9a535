#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eit/point.hpp"
#include "eit/scenario.hpp"

namespace eit {

enum class BoundaryTag : std::uint8_t { GammaArc, OuterRest, ObstacleBoundary };

struct Triangle {
  std::array<int, 3> v{};  // counter-clockwise
  int region = 0;
};

/// Boundary edge oriented with the solution domain on its left.
struct BoundaryEdge {
  std::array<int, 2> v{};
  BoundaryTag tag = BoundaryTag::OuterRest;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

/// Conforming, region-tagged triangulation. Immutable once built.
class Mesh {
 public:
  Mesh() = default;
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
       std::vector<BoundaryEdge> boundary_edges, std::vector<Circle> circles);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
  /// Circles carrying boundary or interface vertices; used by refine().
  const std::vector<Circle>& circles() const { return circles_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  /// Maximum triangle diameter.
  double h() const { return h_; }

  double area(std::size_t t) const;
  double diameter(std::size_t t) const;
  Point centroid(std::size_t t) const;
  double total_area() const;

  /// Vertices touched by boundary edges carrying any of `tags`, ascending.
  std::vector<int> boundary_vertices(std::initializer_list<BoundaryTag> tags) const;
  std::vector<int> boundary_vertices() const;
  /// Vertex mask for the outer boundary (GammaArc and OuterRest).
  std::vector<bool> outer_boundary_mask() const;

  /// Throws Error(InvalidArgument) if conformity or orientation fails.
  void check_invariants() const;

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
  std::vector<Circle> circles_;
  double h_ = 0.0;
};

struct MeshOptions {
  /// Extra polar angles that every ring must carry as vertices. Used to
  /// give two scenarios identical outer-boundary discretisations.
  std::vector<double> extra_angles{0.0};
  /// Extra ring radii, for the same purpose.
  std::vector<double> extra_radii;
  /// Reject adjacent regions with equal conductivity.
  bool require_distinct_neighbors = true;
  /// Minimum number of boundary edges inside a partial measurement arc.
  int min_gamma_edges = 4;
};

/// Structured, interface-aligned mesh with maximum triangle diameter <= h.
Mesh build_mesh(const Scenario& scenario, double h, const MeshOptions& options = {});

/// Radii of the circular interfaces and polar angles of the radial
/// interfaces and measurement-arc endpoints (disk scenarios only).
std::vector<double> interface_radii(const Scenario& scenario);
std::vector<double> interface_angles(const Scenario& scenario);

/// Options under which two scenarios are meshed on matching grids.
MeshOptions pair_options(const Scenario& a, const Scenario& b);

/// Uniform red refinement; midpoints of boundary and circular-interface
/// edges are projected back onto their circles.
Mesh refine(const Mesh& mesh);

/// Conductivity value of each triangle.
std::vector<double> conductivity_field(const Scenario& scenario, const Mesh& mesh);

/// Selects triangles by centroid and region tag.
using Window = std::function<bool(Point centroid, int region)>;

Window whole_domain();
Window ball_window(Point center, double radius);
Window outside_ball_window(Point center, double radius);

/// Triangles selected by a window, with a local mesh. Boundary edges of the
/// submesh keep their parent tag on the parent boundary and are tagged
/// OuterRest on the cut.
struct Submesh {
  Mesh mesh;
  std::vector<int> parent_vertex;    // local -> parent vertex
  std::vector<int> parent_triangle;  // local -> parent triangle
};

Submesh extract_submesh(const Mesh& mesh, const Window& window);

/// Point location on a triangulation by bucketing triangle bounding boxes.
class PointLocator {
 public:
  explicit PointLocator(const Mesh& mesh);
  /// Triangle index containing p (closed triangles), or nullopt.
  std::optional<int> locate(Point p) const;
  /// Barycentric coordinates of p in triangle t.
  std::array<double, 3> barycentric(int t, Point p) const;

 private:
  const Mesh* mesh_;
  Point lo_;
  double cell_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

/// Map from outer-boundary vertices of `a` to coincident vertices of `b`.
/// Throws Error(BoundaryMismatch) when the outer boundaries differ.
std::vector<int> match_outer_boundary(const Mesh& a, const Mesh& b, double tol = 1e-10);

}  // namespace eit
