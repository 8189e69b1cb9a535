#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eit/dtn.hpp"
#include "eit/fem.hpp"
#include "eit/polynomial.hpp"

namespace eit {

/// Data of the coupled system on D0:
///   div(a1 grad u1) - b1 u1 = rho1,  div(a2 grad u2) - b2 u2 = rho2  in D0,
///   u1 - u2 = f1,  a1 d_nu u1 - a2 d_nu u2 = f2  on the boundary of D0.
struct CoupledProblem {
  const Mesh* mesh = nullptr;
  std::vector<double> a1;
  std::vector<double> a2;
  double b1 = 2.0;
  double b2 = 1.0;
  Field rho1;
  Field rho2;
  BoundaryTrace f1;
  BoundaryFunctional f2;

  /// Problem with zero data and constant coefficients.
  static CoupledProblem homogeneous(const Mesh& mesh, double a1, double a2, double b1, double b2);
  void validate() const;
  /// The same problem with every datum multiplied by s.
  CoupledProblem scaled(Complex s) const;
};

struct CoercivityReport {
  bool feasible = false;
  std::optional<double> epsilon0;
  double threshold = 0.0;  // ((1 + b2) / 2)^2
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
  double c0 = 0.0;
};

CoercivityReport check_coercivity(double a1_over_a2_inf, double b1, double b2, double c0);
/// Uses inf(a1/a2) of the problem and c0 = min(inf a1, inf a2, b1, b2).
CoercivityReport check_coercivity(const CoupledProblem& p);

/// Monolithic system. Unknowns: u1 at every vertex, then u2 at the interior
/// vertices in ascending order; u2 on the boundary is u1 - f1.
struct CoupledSystem {
  SparseMatrix matrix;
  Vector rhs;
  std::vector<int> interior;
  std::vector<bool> on_boundary;
};

CoupledSystem assemble_coupled(const CoupledProblem& p);

struct CoupledSolution {
  Field u1;
  Field u2;
  double condition_estimate = 0.0;  // 1-norm estimate
  double relative_residual = 0.0;
  std::vector<std::string> warnings;  // "IllPosedWarning: ..."
};

/// Throws Error(SingularCoupledSystem) when the factorisation fails or the
/// condition estimate exceeds 1e14.
CoupledSolution solve_coupled(const CoupledProblem& p);

/// (|u1|_H1 + |u2|_H1) / (|rho1|_L2 + |rho2|_L2 + |f1|_H1/2 + |f2|_H-1/2),
/// with the boundary surrogates of BoundaryNorms. Throws Error(ZeroData).
double stability_ratio(const CoupledProblem& p, const CoupledSolution& s);

/// Hager-Higham estimate of ||A^{-1}||_1 from an LU factorisation.
double inverse_one_norm_estimate(SparseLu& lu, Eigen::Index n);

/// Constant coefficients of the polynomial form on the disk of `radius`.
struct FormCoefficients {
  double a1 = 2.0;
  double a2 = 1.0;
  double b1 = 2.0;
  double b2 = 1.0;
  double radius = 1.0;
};

struct FormData {
  Polynomial rho1;
  Polynomial rho2;
  Polynomial f1;  // evaluated on the boundary circle
  Polynomial f2;
};

/// Sesquilinear form of the (u1, grad u2) formulation, conjugate-linear in
/// (phi, v). u2 and v must be curl free; otherwise Error(NonCurlFree).
Complex evaluate_form_A(const Polynomial& u1, const VectorPolynomial& u2, const Polynomial& phi,
                        const VectorPolynomial& v, const FormCoefficients& c);
Complex evaluate_functional_F(const FormData& data, const Polynomial& phi, const VectorPolynomial& v,
                              const FormCoefficients& c);
/// ||u1||^2_H1 + ||u2||^2_L2 + ||div(a2 u2)||^2_L2 on the disk.
double form_norm_squared(const Polynomial& u1, const VectorPolynomial& u2, const FormCoefficients& c);

}  // namespace eit
