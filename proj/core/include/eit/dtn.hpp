#pragma once

#include <string>
#include <vector>

#include "eit/fem.hpp"

namespace eit {

/// Discrete local D-N map on the hat functions of the interior Gamma vertices.
struct DtnMatrix {
  std::vector<int> vertices;
  std::vector<Point> points;  // coordinates of `vertices`, for consistency checks
  ArcSpec gamma;
  Eigen::MatrixXcd matrix;
  std::string scenario_hash;
  double h = 0.0;

  friend bool operator==(const DtnMatrix& a, const DtnMatrix& b);
};

struct CauchyPair {
  Vector trace;  // nodal values on `vertices`
  Vector flux;   // functional values on the hats of `vertices`
};

struct CauchyDataset {
  std::vector<int> vertices;
  std::vector<Point> points;
  ArcSpec gamma;
  std::vector<CauchyPair> pairs;
  std::string scenario_hash;
  double h = 0.0;

  friend bool operator==(const CauchyDataset& a, const CauchyDataset& b);
};

/// Outer-boundary vertices whose hat function is supported inside Gamma:
/// every incident outer edge is tagged GammaArc. Ascending.
std::vector<int> gamma_interior_vertices(const Mesh& mesh);

/// Lambda f restricted to Gamma test functions. Entries of f outside the
/// interior Gamma vertices are discarded so the data vanish off Gamma.
BoundaryFunctional dtn_apply(const ForwardSolver& solver, const BoundaryTrace& f);
BoundaryFunctional dtn_apply(const Scenario& scenario, const Mesh& mesh, const BoundaryTrace& f);

DtnMatrix local_dtn_matrix(const Scenario& scenario, const Mesh& mesh);

/// Relative symmetry defect ||M - M^T|| / ||M|| (Frobenius).
double symmetry_defect(const Eigen::MatrixXcd& m);

/// Pairs Lambda f with f for boundary data f: <Lambda f, f> / ||f||^2_{L2(Gamma)}.
/// For an eigenmode of the continuous map this approximates its eigenvalue.
double mode_pairing(const Mesh& mesh, const BoundaryTrace& f, const BoundaryFunctional& flux);

/// cos(n theta) or sin(n theta) sampled on the outer-boundary vertices.
BoundaryTrace fourier_mode(const Mesh& mesh, int n, bool sine = false);

CauchyDataset cauchy_dataset(const Scenario& scenario, const Mesh& mesh,
                             const std::vector<BoundaryTrace>& traces);

/// Expand data given on `vertices` to a full-length vector.
Vector scatter(const Mesh& mesh, const std::vector<int>& vertices, const Vector& values);
Vector gather(const std::vector<int>& vertices, const Vector& full);

/// Norm surrogates for boundary data. H^{1/2}: H^1 norm of the discrete
/// harmonic extension (Dirichlet data on every boundary vertex). H^{-1/2}:
/// H^1 norm of w solving (-Laplace + 1) w = 0 with Neumann data g.
class BoundaryNorms {
 public:
  explicit BoundaryNorms(const Mesh& mesh);

  double h_half(const BoundaryTrace& g) const;
  double h_minus_half(const BoundaryFunctional& g) const;
  Field harmonic_extension(const BoundaryTrace& g) const;

 private:
  const Mesh* mesh_;
  std::vector<bool> boundary_;
  std::unique_ptr<LinearSystem> dirichlet_;
  std::unique_ptr<LinearSystem> neumann_;
};

double h_half_norm(const Mesh& mesh, const BoundaryTrace& g);
double h_minus_half_norm(const Mesh& mesh, const BoundaryFunctional& g);

}  // namespace eit
