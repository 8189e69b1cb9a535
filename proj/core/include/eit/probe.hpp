#pragma once

#include <memory>
#include <string>
#include <vector>

#include "eit/coupled.hpp"
#include "eit/dtn.hpp"
#include "eit/singular.hpp"

namespace eit {

enum class Classification { Match, Mismatch };

const char* to_string(Classification c);

struct ProbeResult {
  std::vector<int> j_values;
  /// Size of the driving datum: H^{1/2} surrogate of f_j, or the window
  /// norm of the Green function for interface probes.
  std::vector<double> data_norms;
  std::vector<double> window_h1;  // ||u_j||_H1(O_eps)
  std::vector<double> away_h1;    // ||u_j||_H1 outside B_eps
  std::vector<double> away_l2;    // ||u_j||_L2 of the solution domain
  std::vector<double> discrepancy;
  std::vector<double> relative_discrepancy;
  double slope = 0.0;
  double tau = 0.0;
  Classification classification = Classification::Match;
  std::vector<std::string> warnings;
};

/// Least-squares slope of y against x. Throws InsufficientRange when x is
/// constant or fewer than two points are given.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

inline constexpr double kDefaultTau = 1e-6;
inline constexpr int kMinProbeLevels = 4;

/// Singular boundary probe with f_j = cutoff * Phi_2(., x_j). d_j is the
/// H^{-1/2} surrogate of (Lambda_A - Lambda_B) f_j on Gamma; Mismatch when
/// the slope of d_j against ||f_j|| exceeds tau. Only j values whose source
/// is resolvable on the mesh are used; fewer than four is InsufficientRange.
ProbeResult run_singular_probe(const Scenario& a, const Scenario& b, const Mesh& mesh, const SingularFamily& fam,
                               double tau = kDefaultTau);
/// Variant for scenarios meshed separately (different obstacles); the outer
/// boundaries must coincide vertex for vertex.
ProbeResult run_singular_probe(const Scenario& a, const Mesh& mesh_a, const Scenario& b, const Mesh& mesh_b,
                               const SingularFamily& fam, double tau = kDefaultTau);

/// Coupled problem on the window submesh satisfied by (u_A, u_B):
/// a1 = gamma_A, a2 = gamma_B, b1 = 2, b2 = 1, rho1 = -2 u_A, rho2 = -u_B,
/// f1 = u_A - u_B and f2 the weak conormal jump on the window boundary.
struct LocalCoupled {
  std::shared_ptr<const Submesh> submesh;
  CoupledProblem problem;
  Field u_a;  // restrictions to the submesh
  Field u_b;
};

/// Throws WindowCrossesInterface when either conductivity varies over the
/// window, and EmptyWindow when it selects nothing.
LocalCoupled build_local_coupled(const Scenario& a, const Scenario& b, const Mesh& mesh, const Window& window,
                                 const Field& u_a, const Field& u_b);

struct RecoverRow {
  double c = 0.0;
  double slope = 0.0;
  std::vector<double> discrepancy;
};

struct RecoverResult {
  double c_hat = 0.0;
  std::vector<RecoverRow> table;
  std::vector<std::string> warnings;  // "GridTooCoarse: ..."
};

/// Scenario with the conductivity of region `unknown_region` replaced by c.
Scenario with_conductivity(const Scenario& s, std::size_t unknown_region, double c);

/// argmin over the grid of the discrepancy slope between the measured map
/// and template(c); ties go to the smallest c. The mesh must reproduce the
/// measurement vertices.
RecoverResult recover_boundary_constant(const DtnMatrix& measured, const Scenario& templ, std::size_t unknown_region,
                                        const std::vector<double>& grid, const SingularFamily& fam, const Mesh& mesh);
/// Same with recorded Cauchy pairs; the recorded traces drive the fit.
RecoverResult recover_boundary_constant(const CauchyDataset& measured, const Scenario& templ,
                                        std::size_t unknown_region, const std::vector<double>& grid,
                                        const Mesh& mesh);

/// Half ball {|x - p| < radius, (x - p) . nu < 0} behind a claimed interface.
Window half_ball_window(Point p, Point nu, double radius);

/// Interface probe with Green sources x_j = p + nu / j. Records
/// ||G_A(., x_j)||_H1(A') and max |G_A - G_B| on A' (the discrepancy). Sources
/// closer than 3h to an interface are dropped; fewer than four left is
/// InsufficientRange.
ProbeResult probe_interface_point(const Scenario& a, const Scenario& b, const Mesh& mesh, Point p, Point nu,
                                  const std::vector<int>& j_values, double window_radius, double tau = kDefaultTau);

}  // namespace eit
