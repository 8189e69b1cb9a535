#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "eit/coupled.hpp"

namespace eit::testing {

// Dense construction of the monolithic coupled system straight from the
// weak form: hat functions come from inverting [x y 1] per triangle and
// products are integrated with the edge-midpoint rule, exact for the
// quadratic integrands of P1 mass terms. Unknown ordering follows
// assemble_coupled: u1 at every vertex, then u2 at interior vertices.
struct DenseCoupled {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
};

inline DenseCoupled dense_coupled_reference(const CoupledProblem& p) {
  const Mesh& m = *p.mesh;
  const int n = static_cast<int>(m.vertex_count());
  std::vector<bool> bnd(n, false);
  for (const auto& e : m.boundary_edges()) bnd[e.v[0]] = bnd[e.v[1]] = true;

  // a_k(u, phi) = a grad u . grad phi + b u phi, as dense n x n matrices.
  auto form = [&](const std::vector<double>& a, double b) {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
      const auto& v = m.triangles()[t].v;
      Eigen::Matrix3d xy1;
      for (int r = 0; r < 3; ++r) xy1.row(r) << m.vertices()[v[r]].x, m.vertices()[v[r]].y, 1.0;
      // Column c holds the coefficients (gx, gy, const) of hat c.
      const Eigen::Matrix3d coef = xy1.inverse();
      const double area = 0.5 * std::abs(xy1.determinant());
      std::array<std::array<double, 2>, 3> mids{};
      for (int e = 0; e < 3; ++e) {
        const Point q = 0.5 * (m.vertices()[v[e]] + m.vertices()[v[(e + 1) % 3]]);
        mids[e] = {q.x, q.y};
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          double mass = 0.0;
          for (const auto& q : mids) {
            const double hi = coef(0, i) * q[0] + coef(1, i) * q[1] + coef(2, i);
            const double hj = coef(0, j) * q[0] + coef(1, j) * q[1] + coef(2, j);
            mass += hi * hj * area / 3.0;
          }
          const double stiff = area * (coef(0, i) * coef(0, j) + coef(1, i) * coef(1, j));
          k(v[i], v[j]) += a[t] * stiff + b * mass;
        }
      }
    }
    return k;
  };
  const Eigen::MatrixXd a1 = form(p.a1, p.b1);
  const Eigen::MatrixXd a2 = form(p.a2, p.b2);
  const std::vector<double> zero(m.triangle_count(), 0.0);
  const Eigen::MatrixXd mass = form(zero, 1.0);
  const Eigen::VectorXcd load1 = -(mass.cast<Complex>() * p.rho1.values);
  const Eigen::VectorXcd load2 = -(mass.cast<Complex>() * p.rho2.values);

  std::vector<int> col2(n, -1);
  int dim = n;
  for (int v = 0; v < n; ++v) {
    if (!bnd[v]) col2[v] = dim++;
  }
  DenseCoupled out{Eigen::MatrixXcd::Zero(dim, dim), Eigen::VectorXcd::Zero(dim)};
  // u2 as a function of the unknowns: boundary u2_j = u1_j - f1_j.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.matrix(i, j) += a1(i, j);
    out.rhs[i] += load1[i];
    const int row = bnd[i] ? i : col2[i];
    const double sign = bnd[i] ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      if (bnd[j]) {
        out.matrix(row, j) += sign * a2(i, j);
        out.rhs[row] += sign * a2(i, j) * p.f1.values[j];
      } else {
        out.matrix(row, col2[j]) += sign * a2(i, j);
      }
    }
    if (bnd[i]) {
      out.rhs[i] += p.f2.values[i] - load2[i];
    } else {
      out.rhs[col2[i]] += load2[i];
    }
  }
  return out;
}

// Two right triangles tiling the unit square, every vertex on the boundary.
inline Mesh two_triangle_mesh() {
  std::vector<Point> v{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  std::vector<Triangle> t{{{0, 1, 2}, 0}, {{0, 2, 3}, 0}};
  std::vector<BoundaryEdge> e{{{0, 1}, BoundaryTag::OuterRest},
                              {{1, 2}, BoundaryTag::OuterRest},
                              {{2, 3}, BoundaryTag::OuterRest},
                              {{3, 0}, BoundaryTag::OuterRest}};
  return Mesh(std::move(v), std::move(t), std::move(e), {});
}

}  // namespace eit::testing
