#pragma once

#include <memory>
#include <vector>

#include "eit/fem.hpp"
#include "eit/singular.hpp"

namespace eit {

/// Dirichlet-Green function G(., y) = Phi_2(., y) / gamma(y) + w, split into
/// the exact singular part and a finite-element correction w.
struct GreensFunction {
  const Scenario* scenario = nullptr;
  const Mesh* mesh = nullptr;
  Point source;
  double gamma_at_source = 1.0;
  Field w;
  /// Weak flux gamma d_nu G on the outer boundary hats.
  BoundaryFunctional boundary_flux;

  double singular_part(Point x) const { return fundamental_solution(x, source) / gamma_at_source; }
  /// G at a point of the solution domain (barycentric interpolation of w).
  Complex operator()(Point x, const PointLocator& locator) const;
  /// G at a mesh vertex other than the source.
  Complex at_vertex(int v) const;
};

/// Throws Error(SourceTooCloseToInterface) when y is closer than 3h to an
/// interface, the outer boundary or the obstacle.
GreensFunction dirichlet_green(const Scenario& scenario, const Mesh& mesh, Point y);

/// Distance from y to the nearest interface edge, boundary edge or obstacle.
double distance_to_interfaces(const Mesh& mesh, Point y);

/// -oint gamma d_nu G(x, .) f ds, from the boundary flux of the Green
/// function with source x. Reproduces u(x) for the forward solution u with
/// Dirichlet data f.
Complex representation_apply(const GreensFunction& g_at_x, const BoundaryTrace& f);

struct KernelSample {
  Point x;
  Point y;
  double green = 0.0;
  double phi = 0.0;
  double ratio = 0.0;
};

/// G / Phi_2 on `rings` circles of radii in [r_lo, r_hi] around the source.
std::vector<KernelSample> kernel_ratio_samples(const GreensFunction& g, double r_lo, double r_hi, int rings = 4,
                                               int per_ring = 24);

/// max |G_A(x, y) - G_B(x, y)| over sources ys and the vertices of mesh A
/// selected by `window` that are at least 3h from the source.
double interior_agreement(const Scenario& a, const Mesh& mesh_a, const Scenario& b, const Mesh& mesh_b,
                          const Window& window, const std::vector<Point>& sources);

}  // namespace eit
