#include "eit/probe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eit/error.hpp"
#include "eit/greens.hpp"

namespace eit {

namespace {

Vector restrict_to(const std::vector<int>& vertices, const Vector& full) {
  Vector out = Vector::Zero(full.size());
  for (int v : vertices) out[v] = full[v];
  return out;
}

void classify(ProbeResult& r, double tau) {
  r.tau = tau;
  r.slope = fit_slope(r.data_norms, r.discrepancy);
  if (!std::isfinite(r.slope)) fail(Errc::SolveFailure, "probe slope is not finite");
  r.classification = r.slope > tau ? Classification::Mismatch : Classification::Match;
}

std::vector<int> usable_j(const Scenario& a, const Scenario& b, const SingularFamily& fam, double h,
                          std::vector<std::string>& warnings) {
  const auto ra = resolvable_j(a, fam, h);
  const auto rb = resolvable_j(b, fam, h);
  std::vector<int> js;
  std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(js));
  for (int j : fam.j_values) {
    if (!std::binary_search(js.begin(), js.end(), j)) {
      warnings.push_back("UnresolvedSource: x_" + std::to_string(j) + " is closer than h to the domain");
    }
  }
  if (js.size() < static_cast<std::size_t>(kMinProbeLevels)) {
    std::ostringstream os;
    os << "only " << js.size() << " of the requested j values are resolvable at h = " << h << "; need "
       << kMinProbeLevels;
    fail(Errc::InsufficientRange, os.str());
  }
  return js;
}

double constant_over(const std::vector<double>& gamma, const std::vector<int>& triangles, const char* which) {
  const double g = gamma[triangles.front()];
  for (int t : triangles) {
    if (gamma[t] != g) fail(Errc::WindowCrossesInterface, std::string("conductivity of ") + which + " varies over the window");
  }
  return g;
}

}  // namespace

const char* to_string(Classification c) { return c == Classification::Match ? "Match" : "Mismatch"; }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(Errc::InsufficientRange, "slope fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) fail(Errc::InsufficientRange, "slope fit needs distinct abscissae");
  return sxy / sxx;
}

ProbeResult run_singular_probe(const Scenario& a, const Scenario& b, const Mesh& mesh, const SingularFamily& fam,
                               double tau) {
  return run_singular_probe(a, mesh, b, mesh, fam, tau);
}

ProbeResult run_singular_probe(const Scenario& a, const Mesh& mesh_a, const Scenario& b, const Mesh& mesh_b,
                               const SingularFamily& fam, double tau) {
  if (!(tau >= 0.0)) fail(Errc::InvalidArgument, "tau must be non-negative");
  validate_family(a, fam);
  validate_family(b, fam);
  ProbeResult r;
  const double h = std::max(mesh_a.h(), mesh_b.h());
  r.j_values = usable_j(a, b, fam, h, r.warnings);

  const bool same_mesh = &mesh_a == &mesh_b;
  const auto map = same_mesh ? std::vector<int>{} : match_outer_boundary(mesh_a, mesh_b);
  const auto gamma_a = gamma_interior_vertices(mesh_a);
  if (!same_mesh) {
    auto gamma_b = gamma_interior_vertices(mesh_b);
    std::vector<int> mapped;
    for (int v : gamma_a) mapped.push_back(map[v]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != gamma_b) fail(Errc::BoundaryMismatch, "measurement arcs of the two meshes differ");
  }

  const ForwardSolver solver_a(a, mesh_a);
  const ForwardSolver solver_b(b, mesh_b);
  const BoundaryNorms norms(mesh_a);
  const Window window = ball_window(fam.anchor, fam.eps);
  const Window away = outside_ball_window(fam.anchor, fam.eps);

  for (int j : r.j_values) {
    const auto fa = singular_dirichlet_data(fam, j, a, mesh_a);
    const Field ua = solver_a.solve(fa);
    const Vector flux_a = restrict_to(gamma_a, solver_a.weak_flux(ua).values);

    Vector flux_b;
    if (same_mesh) {
      flux_b = restrict_to(gamma_a, solver_b.weak_flux(solver_b.solve(fa)).values);
    } else {
      const auto fb = singular_dirichlet_data(fam, j, b, mesh_b);
      const Vector fb_flux = solver_b.weak_flux(solver_b.solve(fb)).values;
      flux_b = Vector::Zero(flux_a.size());
      for (int v : gamma_a) flux_b[v] = fb_flux[map[v]];
    }

    const double d = norms.h_minus_half({flux_a - flux_b});
    const double base = norms.h_minus_half({flux_a});
    r.data_norms.push_back(norms.h_half(fa));
    r.window_h1.push_back(h1_norm(ua, window));
    r.away_h1.push_back(h1_norm(ua, away));
    r.away_l2.push_back(l2_norm(ua));
    r.discrepancy.push_back(d);
    r.relative_discrepancy.push_back(base > 0.0 ? d / base : d);
  }
  classify(r, tau);
  return r;
}

LocalCoupled build_local_coupled(const Scenario& a, const Scenario& b, const Mesh& mesh, const Window& window,
                                 const Field& u_a, const Field& u_b) {
  if (u_a.mesh != &mesh || u_b.mesh != &mesh) fail(Errc::InvalidArgument, "solutions live on a different mesh");
  auto sub = std::make_shared<Submesh>(extract_submesh(mesh, window));
  const Mesh& local = sub->mesh;
  const double ga = constant_over(conductivity_field(a, mesh), sub->parent_triangle, "scenario A");
  const double gb = constant_over(conductivity_field(b, mesh), sub->parent_triangle, "scenario B");

  LocalCoupled out;
  out.submesh = sub;
  out.u_a = Field::zero(local);
  out.u_b = Field::zero(local);
  for (std::size_t v = 0; v < sub->parent_vertex.size(); ++v) {
    out.u_a.values[static_cast<Eigen::Index>(v)] = u_a.values[sub->parent_vertex[v]];
    out.u_b.values[static_cast<Eigen::Index>(v)] = u_b.values[sub->parent_vertex[v]];
  }

  CoupledProblem& p = out.problem;
  p = CoupledProblem::homogeneous(local, ga, gb, 2.0, 1.0);
  p.rho1.values = -2.0 * out.u_a.values;
  p.rho2.values = -out.u_b.values;

  const std::vector<double> ones(local.triangle_count(), 1.0);
  const SparseMatrix stiffness = assemble(local, ones, 0.0).matrix;
  const Vector jump = stiffness * (ga * out.u_a.values - gb * out.u_b.values);
  for (int v : local.boundary_vertices()) {
    p.f1.values[v] = out.u_a.values[v] - out.u_b.values[v];
    p.f2.values[v] = jump[v];
  }
  return out;
}

Scenario with_conductivity(const Scenario& s, std::size_t unknown_region, double c) {
  if (unknown_region >= s.regions.size()) fail(Errc::InvalidArgument, "unknown region index out of range");
  if (!(c > 0.0)) fail(Errc::InvalidArgument, "trial conductivity must be positive");
  Scenario out = s;
  out.regions[unknown_region].conductivity = c;
  return out;
}

namespace {

struct MeasuredPairs {
  std::vector<int> vertices;  // mesh vertices of the measurement
  std::vector<Vector> traces;  // full length
  std::vector<Vector> fluxes;  // full length, restricted to the measurement vertices
};

std::vector<int> locate_vertices(const Mesh& mesh, const std::vector<Point>& points) {
  const auto gamma = gamma_interior_vertices(mesh);
  if (gamma.size() != points.size()) {
    fail(Errc::BoundaryMismatch, "measurement vertices do not match the template mesh");
  }
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (distance(mesh.vertices()[gamma[k]], points[k]) > 1e-9) {
      fail(Errc::BoundaryMismatch, "measurement vertices do not match the template mesh");
    }
  }
  return gamma;
}

RecoverResult recover(const MeasuredPairs& m, const Scenario& templ, std::size_t unknown_region,
                      std::vector<double> grid, const Mesh& mesh) {
  if (grid.empty()) fail(Errc::InvalidArgument, "trial grid is empty");
  if (m.traces.size() < static_cast<std::size_t>(kMinProbeLevels)) {
    fail(Errc::InsufficientRange, "recovery needs at least four measured data");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const BoundaryNorms norms(mesh);
  std::vector<double> data_norms;
  for (const auto& f : m.traces) data_norms.push_back(norms.h_half({f}));

  RecoverResult out;
  std::size_t best = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Scenario trial = with_conductivity(templ, unknown_region, grid[k]);
    const ForwardSolver solver(trial, mesh);
    RecoverRow row;
    row.c = grid[k];
    for (std::size_t i = 0; i < m.traces.size(); ++i) {
      const Vector flux = restrict_to(m.vertices, solver.weak_flux(solver.solve({m.traces[i]})).values);
      row.discrepancy.push_back(norms.h_minus_half({flux - m.fluxes[i]}));
    }
    row.slope = fit_slope(data_norms, row.discrepancy);
    if (!out.table.empty() && row.slope < out.table[best].slope) best = k;
    out.table.push_back(std::move(row));
  }
  out.c_hat = grid[best];
  if (grid.size() > 1 && (best == 0 || best + 1 == grid.size())) {
    std::ostringstream os;
    os << "GridTooCoarse: minimiser c = " << out.c_hat << " lies at the edge of the grid";
    out.warnings.push_back(os.str());
  }
  return out;
}

}  // namespace

RecoverResult recover_boundary_constant(const DtnMatrix& measured, const Scenario& templ, std::size_t unknown_region,
                                        const std::vector<double>& grid, const SingularFamily& fam,
                                        const Mesh& mesh) {
  validate_family(templ, fam);
  MeasuredPairs m;
  m.vertices = locate_vertices(mesh, measured.points);
  std::vector<std::string> ignored;
  for (int j : usable_j(templ, templ, fam, mesh.h(), ignored)) {
    const auto f = singular_dirichlet_data(fam, j, templ, mesh);
    const Vector local = measured.matrix * gather(m.vertices, f.values);
    m.traces.push_back(f.values);
    m.fluxes.push_back(scatter(mesh, m.vertices, local));
  }
  return recover(m, templ, unknown_region, grid, mesh);
}

RecoverResult recover_boundary_constant(const CauchyDataset& measured, const Scenario& templ,
                                        std::size_t unknown_region, const std::vector<double>& grid,
                                        const Mesh& mesh) {
  MeasuredPairs m;
  m.vertices = locate_vertices(mesh, measured.points);
  for (const auto& pair : measured.pairs) {
    m.traces.push_back(scatter(mesh, m.vertices, pair.trace));
    m.fluxes.push_back(scatter(mesh, m.vertices, pair.flux));
  }
  return recover(m, templ, unknown_region, grid, mesh);
}

Window half_ball_window(Point p, Point nu, double radius) {
  return [p, nu, radius](Point c, int) { return distance(c, p) < radius && dot(c - p, nu) < 0.0; };
}

ProbeResult probe_interface_point(const Scenario& a, const Scenario& b, const Mesh& mesh, Point p, Point nu,
                                  const std::vector<int>& j_values, double window_radius, double tau) {
  if (!(tau >= 0.0)) fail(Errc::InvalidArgument, "tau must be non-negative");
  if (!(window_radius > 0.0)) fail(Errc::InvalidArgument, "window radius must be positive");
  const double len = norm(nu);
  if (!(len > 0.0)) fail(Errc::InvalidArgument, "probe direction must be nonzero");
  nu = (1.0 / len) * nu;

  ProbeResult r;
  const double h = mesh.h();
  std::vector<int> js(j_values);
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  for (int j : js) {
    if (j < 1) fail(Errc::InvalidArgument, "j values must be positive");
    const Point x = p + (1.0 / j) * nu;
    if (a.in_solution_domain(x) && b.in_solution_domain(x) && distance_to_interfaces(mesh, x) >= 3.0 * h) {
      r.j_values.push_back(j);
    } else {
      r.warnings.push_back("UnresolvedSource: x_" + std::to_string(j) + " is within 3h of an interface");
    }
  }
  if (r.j_values.size() < static_cast<std::size_t>(kMinProbeLevels)) {
    std::ostringstream os;
    os << "only " << r.j_values.size() << " interface sources are usable at h = " << h << "; need "
       << kMinProbeLevels;
    fail(Errc::InsufficientRange, os.str());
  }

  const Window window = half_ball_window(p, nu, window_radius);
  std::vector<bool> in_window(mesh.vertex_count(), false);
  bool any = false;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    if (!window(mesh.centroid(t), mesh.triangles()[t].region)) continue;
    any = true;
    for (int v : mesh.triangles()[t].v) in_window[v] = true;
  }
  if (!any) fail(Errc::EmptyWindow, "interface window selects no triangle");
  const Window away = outside_ball_window(p, window_radius);

  for (int j : r.j_values) {
    const Point x = p + (1.0 / j) * nu;
    const auto ga = dirichlet_green(a, mesh, x);
    const auto gb = dirichlet_green(b, mesh, x);
    Field nodal = Field::zero(mesh);
    double d = 0.0, scale = 0.0;
    for (std::size_t v = 0; v < in_window.size(); ++v) {
      if (!in_window[v]) continue;
      const Complex va = ga.at_vertex(static_cast<int>(v));
      nodal.values[static_cast<Eigen::Index>(v)] = va;
      d = std::max(d, std::abs(va - gb.at_vertex(static_cast<int>(v))));
      scale = std::max(scale, std::abs(va));
    }
    const double wn = h1_norm(nodal, window);
    r.data_norms.push_back(wn);
    r.window_h1.push_back(wn);
    // Away from the source ball only the regular part is sampled.
    Field far = Field::zero(mesh);
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
      if (distance(mesh.vertices()[v], x) >= 2.0 * h) far.values[static_cast<Eigen::Index>(v)] = ga.at_vertex(static_cast<int>(v));
    }
    r.away_h1.push_back(h1_norm(far, away));
    r.away_l2.push_back(l2_norm(far, away));
    r.discrepancy.push_back(d);
    r.relative_discrepancy.push_back(scale > 0.0 ? d / scale : d);
  }
  classify(r, tau);
  return r;
}

}  // namespace eit
