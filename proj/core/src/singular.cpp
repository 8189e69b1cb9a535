#include "eit/singular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eit/dtn.hpp"
#include "eit/error.hpp"

namespace eit {

namespace {

double blend(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double fundamental_solution(int dim, double r) {
  if (!(r > 0.0)) fail(Errc::CoincidentPoints, "fundamental solution evaluated at its pole");
  if (dim == 2) return -std::log(r) / kTwoPi;
  if (dim == 3) return 1.0 / (2.0 * kTwoPi * r);
  fail(Errc::InvalidArgument, "dimension must be 2 or 3");
}

double fundamental_solution(Point x, Point y) { return fundamental_solution(2, distance(x, y)); }

double fundamental_solution(Point3 x, Point3 y) {
  return fundamental_solution(3, std::sqrt((x.x - y.x) * (x.x - y.x) + (x.y - y.y) * (x.y - y.y) +
                                           (x.z - y.z) * (x.z - y.z)));
}

Point fundamental_solution_gradient(Point x, Point y) {
  const Point d = x - y;
  const double r2 = dot(d, d);
  if (!(r2 > 0.0)) fail(Errc::CoincidentPoints, "fundamental solution gradient evaluated at its pole");
  return (-1.0 / (kTwoPi * r2)) * d;
}

double cutoff(Point x, Point center, double delta) {
  if (!(delta > 0.0)) fail(Errc::InvalidArgument, "cut-off radius must be positive");
  const double s = distance(x, center) / delta;
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = blend(1.0 - s);
  return a / (a + blend(s - 0.5));
}

void validate_family(const Scenario& scenario, const SingularFamily& fam) {
  if (!(fam.delta > 0.0 && fam.eps > 0.0 && fam.eps < 0.5 * fam.delta)) {
    fail(Errc::InvalidArgument, "singular family needs 0 < eps < delta / 2");
  }
  if (fam.j_values.empty()) fail(Errc::InvalidArgument, "singular family needs at least one j");
  for (int j : fam.j_values) {
    if (j < 1) fail(Errc::InvalidArgument, "j values must be positive");
    if (!(scenario.distance_outside(fam.source(j)) > 0.0)) {
      std::ostringstream os;
      os << "source x_" << j << " lies in the closed domain";
      fail(Errc::InvalidArgument, os.str());
    }
  }
  // The cut-off support on the outer boundary must stay inside Gamma.
  constexpr int kSamples = 4096;
  for (int k = 0; k < kSamples; ++k) {
    const double t = kTwoPi * k / kSamples;
    const Point q = scenario.boundary_point(t);
    if (distance(q, fam.anchor) < fam.delta && !scenario.gamma_arc.contains_strictly(polar_angle(q - scenario.centre()))) {
      fail(Errc::InvalidArgument, "cut-off support reaches the boundary outside the measurement arc");
    }
  }
}

SingularFamily make_family(const Scenario& scenario, double anchor_angle, double delta, double eps,
                           std::vector<int> j_values) {
  SingularFamily fam;
  fam.anchor = scenario.boundary_point(anchor_angle);
  fam.normal = scenario.outward_normal(fam.anchor);
  fam.delta = delta;
  fam.eps = eps;
  std::sort(j_values.begin(), j_values.end());
  j_values.erase(std::unique(j_values.begin(), j_values.end()), j_values.end());
  fam.j_values = std::move(j_values);
  validate_family(scenario, fam);
  return fam;
}

int family_j0(const Scenario& scenario, const SingularFamily& fam) {
  // Sources move monotonically towards the anchor; scan down from a large j
  // until one falls inside the closed domain.
  constexpr int kMax = 100000;
  int j0 = 1;
  for (int j = kMax; j >= 1; --j) {
    if (!(scenario.distance_outside(fam.source(j)) > 0.0)) {
      j0 = j + 1;
      break;
    }
  }
  return j0;
}

std::vector<int> resolvable_j(const Scenario& scenario, const SingularFamily& fam, double h) {
  const int j0 = family_j0(scenario, fam);
  std::vector<int> out;
  for (int j : fam.j_values) {
    if (j >= j0 && scenario.distance_outside(fam.source(j)) >= h) out.push_back(j);
  }
  return out;
}

BoundaryTrace singular_dirichlet_data(const SingularFamily& fam, int j, const Scenario& scenario, const Mesh& mesh) {
  if (j < 1 || !(scenario.distance_outside(fam.source(j)) > 0.0)) {
    fail(Errc::InvalidArgument, "j is outside the family range");
  }
  const Point xj = fam.source(j);
  BoundaryTrace f{Vector::Zero(static_cast<Eigen::Index>(mesh.vertex_count()))};
  for (int v : gamma_interior_vertices(mesh)) {
    const Point x = mesh.vertices()[v];
    const double chi = cutoff(x, fam.anchor, fam.delta);
    if (chi > 0.0) f.values[v] = chi * fundamental_solution(x, xj);
  }
  return f;
}

}  // namespace eit
