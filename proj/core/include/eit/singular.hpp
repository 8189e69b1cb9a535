#pragma once

#include <vector>

#include "eit/fem.hpp"

namespace eit {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// 2D: -ln|x - y| / (2 pi).  Throws Error(CoincidentPoints) when x == y.
double fundamental_solution(Point x, Point y);
/// 3D: 1 / (4 pi |x - y|).
double fundamental_solution(Point3 x, Point3 y);
/// Either branch as a function of the distance; dim must be 2 or 3.
double fundamental_solution(int dim, double distance);
/// Gradient in x of the 2D fundamental solution.
Point fundamental_solution_gradient(Point x, Point y);

/// Smooth radial bump: 1 on the ball of radius delta/2, 0 outside the ball
/// of radius delta, exp(-1/t) blending in between.
double cutoff(Point x, Point center, double delta);

/// Boundary data concentrating at an anchor on the outer boundary, driven by
/// exterior points x_j = anchor + normal / j.
struct SingularFamily {
  Point anchor;
  Point normal;  // outward unit normal at the anchor
  double delta = 0.5;
  double eps = 0.1;
  std::vector<int> j_values;

  Point source(int j) const { return anchor + (1.0 / j) * normal; }
};

/// Family anchored at the boundary point with the given polar angle.
/// Validates eps < delta/2, that the cut-off support on the boundary lies in
/// Gamma and that every x_j lies outside the closed domain.
SingularFamily make_family(const Scenario& scenario, double anchor_angle, double delta, double eps,
                           std::vector<int> j_values);
void validate_family(const Scenario& scenario, const SingularFamily& fam);

/// Smallest j from which every x_k (k >= j) lies outside the closed domain.
int family_j0(const Scenario& scenario, const SingularFamily& fam);

/// The j values whose source is at least one mesh size away from the domain.
std::vector<int> resolvable_j(const Scenario& scenario, const SingularFamily& fam, double h);

/// f_j = cutoff * Phi_2(., x_j) at the interior Gamma vertices, zero elsewhere.
BoundaryTrace singular_dirichlet_data(const SingularFamily& fam, int j, const Scenario& scenario, const Mesh& mesh);

}  // namespace eit
