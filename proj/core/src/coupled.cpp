#include "eit/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eit/error.hpp"

namespace eit {

namespace {

using Triplet = Eigen::Triplet<Complex>;

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double inf_ratio(const std::vector<double>& a1, const std::vector<double>& a2) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < a1.size(); ++t) r = std::min(r, a1[t] / a2[t]);
  return r;
}

void require_curl_free(const VectorPolynomial& v, const char* name) {
  double scale = 0.0;
  for (const auto& [e, c] : v.x.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [e, c] : v.y.terms()) scale = std::max(scale, std::abs(c));
  if (!v.curl().is_zero(1e-12 * std::max(scale, 1.0))) {
    fail(Errc::NonCurlFree, std::string(name) + " must be a gradient field");
  }
}

int quadrature_order(std::initializer_list<int> degrees) {
  int d = 0;
  for (int x : degrees) d = std::max(d, x);
  return 2 * d + 4;
}

}  // namespace

CoupledProblem CoupledProblem::homogeneous(const Mesh& mesh, double a1, double a2, double b1, double b2) {
  CoupledProblem p;
  p.mesh = &mesh;
  p.a1.assign(mesh.triangle_count(), a1);
  p.a2.assign(mesh.triangle_count(), a2);
  p.b1 = b1;
  p.b2 = b2;
  p.rho1 = Field::zero(mesh);
  p.rho2 = Field::zero(mesh);
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  p.f1 = {Vector::Zero(n)};
  p.f2 = {Vector::Zero(n)};
  return p;
}

void CoupledProblem::validate() const {
  if (!mesh) fail(Errc::InvalidArgument, "coupled problem has no mesh");
  const auto nt = mesh->triangle_count();
  const auto nv = static_cast<Eigen::Index>(mesh->vertex_count());
  if (a1.size() != nt || a2.size() != nt) fail(Errc::InvalidArgument, "coefficient count differs from triangle count");
  for (std::size_t t = 0; t < nt; ++t) {
    if (!(a1[t] > 0.0 && a2[t] > 0.0) || !std::isfinite(a1[t]) || !std::isfinite(a2[t])) {
      fail(Errc::InvalidArgument, "a1 and a2 must be positive and finite");
    }
  }
  if (!(b1 > 0.0 && b2 > 0.0)) fail(Errc::InvalidArgument, "b1 and b2 must be positive");
  if (rho1.values.size() != nv || rho2.values.size() != nv || f1.values.size() != nv || f2.values.size() != nv) {
    fail(Errc::InvalidArgument, "coupled data length differs from vertex count");
  }
}

CoupledProblem CoupledProblem::scaled(Complex s) const {
  CoupledProblem p = *this;
  p.rho1.values *= s;
  p.rho2.values *= s;
  p.f1.values *= s;
  p.f2.values *= s;
  return p;
}

CoercivityReport check_coercivity(double a1_over_a2_inf, double b1, double b2, double c0) {
  if (!(a1_over_a2_inf > 0.0 && b1 > 0.0 && b2 > 0.0 && c0 > 0.0)) {
    fail(Errc::InvalidArgument, "coercivity inputs must be positive");
  }
  CoercivityReport r;
  r.c0 = c0;
  r.threshold = 0.25 * (1.0 + b2) * (1.0 + b2);
  const double m = std::min(b1, a1_over_a2_inf);
  r.feasible = m > r.threshold;
  if (!r.feasible) {
    // Limits as epsilon0 -> 1; at least one of them is nonpositive.
    r.c3 = b1 - r.threshold;
    r.c4 = a1_over_a2_inf - r.threshold;
    return r;
  }
  const double eps = 0.5 * (r.threshold / m + 1.0);
  r.epsilon0 = eps;
  r.c3 = b1 - r.threshold / eps;
  r.c4 = a1_over_a2_inf - r.threshold / eps;
  r.c5 = std::min({1.0 - eps, c0 * (1.0 - eps), r.c3, c0 * r.c4});
  return r;
}

CoercivityReport check_coercivity(const CoupledProblem& p) {
  p.validate();
  const double c0 = std::min({min_of(p.a1), min_of(p.a2), p.b1, p.b2});
  return check_coercivity(inf_ratio(p.a1, p.a2), p.b1, p.b2, c0);
}

CoupledSystem assemble_coupled(const CoupledProblem& p) {
  p.validate();
  const Mesh& mesh = *p.mesh;
  const auto n = static_cast<int>(mesh.vertex_count());
  const auto s1 = assemble(mesh, p.a1, p.b1, &p.rho1);
  const auto s2 = assemble(mesh, p.a2, p.b2, &p.rho2);

  CoupledSystem out;
  out.on_boundary.assign(static_cast<std::size_t>(n), false);
  for (int v : mesh.boundary_vertices()) out.on_boundary[v] = true;
  std::vector<int> u2_index(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (!out.on_boundary[v]) {
      u2_index[v] = n + static_cast<int>(out.interior.size());
      out.interior.push_back(v);
    }
  }
  const auto dim = static_cast<Eigen::Index>(n + static_cast<int>(out.interior.size()));
  out.rhs = Vector::Zero(dim);
  std::vector<Triplet> trip;

  // u1 test functions: rows 0..n-1.
  for (int k = 0; k < s1.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(s1.matrix, k); it; ++it) {
      trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    }
  }
  for (int i = 0; i < n; ++i) out.rhs[i] = s1.load[i];
  for (int k = 0; k < s2.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(s2.matrix, k); it; ++it) {
      const int i = static_cast<int>(it.row());
      const int j = static_cast<int>(it.col());
      const Complex kij = it.value();
      // Row of the shared boundary test function: - (K2 u2)_i.
      // Row of an interior u2 test function: + (K2 u2)_i.
      const int row = out.on_boundary[i] ? i : u2_index[i];
      const double sign = out.on_boundary[i] ? -1.0 : 1.0;
      if (out.on_boundary[j]) {
        trip.emplace_back(row, j, sign * kij);
        out.rhs[row] += sign * kij * p.f1.values[j];
      } else {
        trip.emplace_back(row, u2_index[j], sign * kij);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (out.on_boundary[i]) {
      out.rhs[i] += p.f2.values[i] - s2.load[i];
    } else {
      out.rhs[u2_index[i]] += s2.load[i];
    }
  }
  out.matrix.resize(dim, dim);
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  return out;
}

double inverse_one_norm_estimate(SparseLu& lu, Eigen::Index n) {
  Vector x = Vector::Constant(n, Complex{1.0 / static_cast<double>(n), 0.0});
  double est = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const Vector y = lu.solve(x);
    const double e = y.cwiseAbs().sum();
    if (iter > 0 && e <= est) break;
    est = e;
    Vector xi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = std::abs(y[i]);
      xi[i] = a > 0.0 ? y[i] / a : Complex{1.0, 0.0};
    }
    const Vector z = lu.adjoint().solve(xi);
    Eigen::Index j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && std::abs(z[j]) <= z.dot(x).real()) break;
    x.setZero();
    x[j] = 1.0;
  }
  return est;
}

CoupledSolution solve_coupled(const CoupledProblem& p) {
  const auto sys = assemble_coupled(p);
  const Mesh& mesh = *p.mesh;
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  const auto dim = sys.matrix.rows();

  SparseLu lu;
  lu.analyzePattern(sys.matrix);
  lu.factorize(sys.matrix);
  if (lu.info() != Eigen::Success) {
    fail(Errc::SingularCoupledSystem, "coupled matrix is singular: " + lu.lastErrorMessage());
  }
  double norm1 = 0.0;
  for (Eigen::Index k = 0; k < sys.matrix.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(sys.matrix, k); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  CoupledSolution out;
  out.condition_estimate = norm1 * inverse_one_norm_estimate(lu, dim);
  if (!(out.condition_estimate < 1e14)) {
    std::ostringstream os;
    os << "coupled matrix is numerically singular (condition estimate " << out.condition_estimate << ")";
    fail(Errc::SingularCoupledSystem, os.str());
  }
  const Vector x = lu.solve(sys.rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) fail(Errc::SingularCoupledSystem, "coupled solve failed");
  const double rhs_norm = sys.rhs.norm();
  out.relative_residual = (sys.matrix * x - sys.rhs).norm() / (rhs_norm > 0.0 ? rhs_norm : 1.0);

  out.u1 = Field{&mesh, x.head(n)};
  out.u2 = Field::zero(mesh);
  for (Eigen::Index v = 0; v < n; ++v) {
    if (sys.on_boundary[static_cast<std::size_t>(v)]) out.u2.values[v] = x[v] - p.f1.values[v];
  }
  for (std::size_t k = 0; k < sys.interior.size(); ++k) {
    out.u2.values[sys.interior[k]] = x[n + static_cast<Eigen::Index>(k)];
  }
  const auto report = check_coercivity(p);
  if (!report.feasible) {
    std::ostringstream os;
    os << "IllPosedWarning: min(b1, inf a1/a2) = " << std::min(p.b1, inf_ratio(p.a1, p.a2))
       << " does not exceed ((1+b2)/2)^2 = " << report.threshold;
    out.warnings.push_back(os.str());
  }
  return out;
}

double stability_ratio(const CoupledProblem& p, const CoupledSolution& s) {
  const BoundaryNorms norms(*p.mesh);
  const double data = l2_norm(p.rho1) + l2_norm(p.rho2) + norms.h_half(p.f1) + norms.h_minus_half(p.f2);
  if (!(data > 0.0)) fail(Errc::ZeroData, "stability ratio needs nonzero data");
  return (h1_norm(s.u1) + h1_norm(s.u2)) / data;
}

Complex evaluate_form_A(const Polynomial& u1, const VectorPolynomial& u2, const Polynomial& phi,
                        const VectorPolynomial& v, const FormCoefficients& c) {
  require_curl_free(u2, "u2");
  require_curl_free(v, "v");
  const Polynomial div_u = Complex{c.a2, 0.0} * u2.divergence();
  const Polynomial div_v = Complex{c.a2, 0.0} * v.divergence();
  const Polynomial u1x = u1.dx(), u1y = u1.dy(), phx = phi.dx(), phy = phi.dy();
  const int order = quadrature_order({u1.degree(), u2.x.degree(), u2.y.degree(), phi.degree(), v.x.degree(),
                                      v.y.degree()});
  const Complex volume = integrate_disk(
      [&](Point x) {
        return div_u(x) * std::conj(div_v(x)) +
               c.a2 * c.b2 * (u2.x(x) * std::conj(v.x(x)) + u2.y(x) * std::conj(v.y(x))) +
               c.a1 * (u1x(x) * std::conj(phx(x)) + u1y(x) * std::conj(phy(x))) + c.b1 * u1(x) * std::conj(phi(x));
      },
      c.radius, order);
  const Complex boundary = integrate_circle(
      [&](Point x, Point nu) {
        const Complex nv = nu.x * std::conj(v.x(x)) + nu.y * std::conj(v.y(x));
        const Complex nu2 = nu.x * u2.x(x) + nu.y * u2.y(x);
        return c.a2 * c.b2 * nv * u1(x) + c.a2 * nu2 * std::conj(phi(x));
      },
      c.radius, order);
  return volume - boundary;
}

Complex evaluate_functional_F(const FormData& data, const Polynomial& phi, const VectorPolynomial& v,
                              const FormCoefficients& c) {
  require_curl_free(v, "v");
  const Polynomial div_v = Complex{c.a2, 0.0} * v.divergence();
  const int order = quadrature_order({data.rho1.degree(), data.rho2.degree(), data.f1.degree(), data.f2.degree(),
                                      phi.degree(), v.x.degree(), v.y.degree()});
  const Complex volume = integrate_disk(
      [&](Point x) { return data.rho2(x) * std::conj(div_v(x)) - data.rho1(x) * std::conj(phi(x)); }, c.radius,
      order);
  const Complex boundary = integrate_circle(
      [&](Point x, Point nu) {
        const Complex nv = nu.x * std::conj(v.x(x)) + nu.y * std::conj(v.y(x));
        return c.a2 * data.f2(x) * std::conj(phi(x)) - c.a2 * c.b2 * nv * data.f1(x);
      },
      c.radius, order);
  return volume + boundary;
}

double form_norm_squared(const Polynomial& u1, const VectorPolynomial& u2, const FormCoefficients& c) {
  const Polynomial div_u = Complex{c.a2, 0.0} * u2.divergence();
  const Polynomial u1x = u1.dx(), u1y = u1.dy();
  const int order = quadrature_order({u1.degree(), u2.x.degree(), u2.y.degree()});
  return integrate_disk(
             [&](Point x) {
               return Complex{std::norm(u1(x)) + std::norm(u1x(x)) + std::norm(u1y(x)) + std::norm(u2.x(x)) +
                                  std::norm(u2.y(x)) + std::norm(div_u(x)),
                              0.0};
             },
             c.radius, order)
      .real();
}

}  // namespace eit
