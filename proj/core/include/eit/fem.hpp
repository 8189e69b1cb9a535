#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "eit/mesh.hpp"
#include "eit/scenario.hpp"

namespace eit {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;
using SparseLu = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

/// Nodal P1 function. The mesh must outlive the field.
struct Field {
  const Mesh* mesh = nullptr;
  Vector values;

  static Field zero(const Mesh& m) { return {&m, Vector::Zero(static_cast<Eigen::Index>(m.vertex_count()))}; }
  bool is_finite() const { return values.allFinite(); }
};

/// Nodal data on boundary vertices, full length, zero elsewhere.
struct BoundaryTrace {
  Vector values;
};

/// Values <g, phi_i> of a boundary functional on the hat functions of the
/// boundary vertices, full length, zero elsewhere.
struct BoundaryFunctional {
  Vector values;
};

struct RobinTerm {
  BoundaryTag tag = BoundaryTag::ObstacleBoundary;
  Complex coefficient{0.0, 0.0};
};

/// Unconstrained Galerkin matrix and load for
///   int a grad u . grad phi + b int u phi + oint coeff u phi = -int rho phi.
struct GalerkinSystem {
  SparseMatrix matrix;
  Vector load;
};

GalerkinSystem assemble(const Mesh& mesh, std::span<const double> a, double b,
                        const Field* rho = nullptr, std::optional<RobinTerm> robin = std::nullopt);

/// Galerkin system reduced to the free nodes, with a sparse LU factorisation.
/// Constrained nodes are eliminated and their values lifted to the right-hand side.
class LinearSystem {
 public:
  LinearSystem(const GalerkinSystem& system, std::vector<bool> constrained);

  /// Full nodal solution with prescribed values on constrained nodes.
  Vector solve(const Vector& constrained_values) const;
  Vector solve(const Vector& constrained_values, const Vector& load) const;

  const SparseMatrix& matrix() const { return reduced_; }
  const Vector& rhs() const { return load_; }
  const std::vector<int>& free_index() const { return free_index_; }
  const std::vector<bool>& constrained() const { return constrained_; }
  std::size_t free_count() const { return free_vertices_.size(); }

 private:
  SparseMatrix full_;
  SparseMatrix reduced_;
  SparseMatrix coupling_;  // free rows, constrained columns
  Vector load_;
  std::vector<bool> constrained_;
  std::vector<int> free_index_;
  std::vector<int> free_vertices_;
  std::vector<int> constrained_vertices_;
  std::shared_ptr<SparseLu> lu_;
};

/// Nodal interpolant of a function.
Field interpolate(const Mesh& mesh, const std::function<Complex(Point)>& fn);

/// Boundary trace of u on the vertices carrying `tag`.
BoundaryTrace trace(const Field& u, BoundaryTag tag);
BoundaryTrace trace(const Field& u, std::initializer_list<BoundaryTag> tags);

/// Boundary mass matrix over edges with the given tags (full size).
Eigen::SparseMatrix<double> boundary_mass(const Mesh& mesh, std::initializer_list<BoundaryTag> tags);

/// Functional phi_i -> oint g(x, nu) phi_i ds over edges with the given tags,
/// by 5-point Gauss quadrature per edge; nu is the outward edge normal.
BoundaryFunctional boundary_functional(const Mesh& mesh, std::initializer_list<BoundaryTag> tags,
                                       const std::function<Complex(Point x, Point nu)>& g);

/// Forward problem div(gamma grad u) = 0 in the solution domain with
/// Dirichlet data on the outer boundary and the obstacle condition on the
/// obstacle. The factorisation is computed once and reused.
class ForwardSolver {
 public:
  ForwardSolver(const Scenario& scenario, const Mesh& mesh);

  Field solve(const BoundaryTrace& f) const;
  /// Variationally consistent flux gamma d_nu u on the outer boundary.
  BoundaryFunctional weak_flux(const Field& u) const;

  const Mesh& mesh() const { return *mesh_; }
  const GalerkinSystem& system() const { return system_; }

 private:
  const Mesh* mesh_;
  GalerkinSystem system_;
  std::vector<bool> outer_;
  std::unique_ptr<LinearSystem> linear_;
};

Field solve_forward(const Scenario& scenario, const Mesh& mesh, const BoundaryTrace& f);
BoundaryFunctional weak_flux(const Scenario& scenario, const Mesh& mesh, const Field& u);

double l2_norm(const Field& u, const Window& window = whole_domain());
double h1_seminorm(const Field& u, const Window& window = whole_domain());
double h1_norm(const Field& u, const Window& window = whole_domain());

/// Errors against an analytic solution, by a degree-5 triangle rule. The
/// callbacks receive the triangle's region so piecewise solutions can be
/// continued across curved interfaces.
struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double h1 = 0.0;
};

using ScalarFn = std::function<Complex(Point, int region)>;
using GradientFn = std::function<std::array<Complex, 2>(Point, int region)>;

ErrorNorms error_norms(const Field& u, const ScalarFn& exact, const GradientFn& gradient);

/// Gradients of the barycentric coordinates of triangle t.
std::array<Point, 3> barycentric_gradients(const Mesh& mesh, std::size_t t);

}  // namespace eit
