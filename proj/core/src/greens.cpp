#include "eit/greens.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "eit/error.hpp"
#include "eit/polynomial.hpp"

namespace eit {

namespace {

struct EdgeSide {
  int triangle;
  int a;  // edge traversed a -> b counter-clockwise within `triangle`
  int b;
};

struct InterfaceEdge {
  EdgeSide side;     // triangle T
  double gamma_in;   // gamma on T
  double gamma_out;  // gamma across the edge
};

std::vector<InterfaceEdge> interface_edges(const Mesh& mesh, const std::vector<double>& gamma) {
  std::map<std::pair<int, int>, std::vector<EdgeSide>> edges;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& v = mesh.triangles()[t].v;
    for (int k = 0; k < 3; ++k) {
      const int a = v[k], b = v[(k + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}].push_back({static_cast<int>(t), a, b});
    }
  }
  std::vector<InterfaceEdge> out;
  for (const auto& [key, sides] : edges) {
    if (sides.size() != 2) continue;
    const double g0 = gamma[sides[0].triangle], g1 = gamma[sides[1].triangle];
    if (g0 == g1) continue;
    out.push_back({sides[0], g0, g1});
  }
  return out;
}

double segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + t * d);
}

// Adds oint_e g(x, nu) phi_i ds for the edge a -> b with nu to its right.
template <typename Fn>
void add_edge_integral(const Mesh& mesh, int ia, int ib, Fn&& g, Vector& out) {
  static const auto rule = gauss_legendre(5, 0.0, 1.0);
  const Point a = mesh.vertices()[ia];
  const Point b = mesh.vertices()[ib];
  const double len = distance(a, b);
  const Point nu{(b.y - a.y) / len, (a.x - b.x) / len};
  for (const auto& [s, w] : rule) {
    const Complex val = w * len * g((1.0 - s) * a + s * b, nu);
    out[ia] += (1.0 - s) * val;
    out[ib] += s * val;
  }
}

std::vector<double> boundary_edge_gamma(const Mesh& mesh, const std::vector<double>& gamma) {
  std::map<std::pair<int, int>, int> owner;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& v = mesh.triangles()[t].v;
    for (int k = 0; k < 3; ++k) owner[{v[k], v[(k + 1) % 3]}] = static_cast<int>(t);
  }
  std::vector<double> out;
  for (const auto& e : mesh.boundary_edges()) out.push_back(gamma[owner.at({e.v[0], e.v[1]})]);
  return out;
}

}  // namespace

double distance_to_interfaces(const Mesh& mesh, Point y) {
  // Region tags rather than conductivities: any tag change counts.
  std::vector<double> tags(mesh.triangle_count());
  for (std::size_t t = 0; t < tags.size(); ++t) tags[t] = mesh.triangles()[t].region;
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : interface_edges(mesh, tags)) {
    d = std::min(d, segment_distance(y, mesh.vertices()[e.side.a], mesh.vertices()[e.side.b]));
  }
  for (const auto& e : mesh.boundary_edges()) {
    d = std::min(d, segment_distance(y, mesh.vertices()[e.v[0]], mesh.vertices()[e.v[1]]));
  }
  return d;
}

Complex GreensFunction::operator()(Point x, const PointLocator& locator) const {
  const auto t = locator.locate(x);
  if (!t) fail(Errc::InvalidArgument, "evaluation point lies outside the mesh");
  const auto lam = locator.barycentric(*t, x);
  const auto& tri = mesh->triangles()[*t];
  Complex wx{0.0, 0.0};
  for (int k = 0; k < 3; ++k) wx += lam[k] * w.values[tri.v[k]];
  return singular_part(x) + wx;
}

Complex GreensFunction::at_vertex(int v) const { return singular_part(mesh->vertices()[v]) + w.values[v]; }

GreensFunction dirichlet_green(const Scenario& scenario, const Mesh& mesh, Point y) {
  const double h = mesh.h();
  const PointLocator locator(mesh);
  const auto ty = locator.locate(y);
  if (!ty || !scenario.in_solution_domain(y)) fail(Errc::InvalidArgument, "Green source lies outside the solution domain");
  const double dist = distance_to_interfaces(mesh, y);
  if (dist < 3.0 * h) {
    std::ostringstream os;
    os << "source (" << y.x << ", " << y.y << ") is " << dist << " from an interface or boundary; need >= " << 3.0 * h;
    fail(Errc::SourceTooCloseToInterface, os.str());
  }
  const auto gamma = conductivity_field(scenario, mesh);

  GreensFunction g;
  g.scenario = &scenario;
  g.mesh = &mesh;
  g.source = y;
  g.gamma_at_source = gamma[*ty];
  const double gy = g.gamma_at_source;
  auto dS = [&](Point x, Point nu) { return dot(fundamental_solution_gradient(x, y), nu) / gy; };
  auto S = [&](Point x) { return fundamental_solution(x, y) / gy; };

  std::optional<RobinTerm> robin;
  Complex ilambda{0.0, 0.0};
  if (const auto* imp = std::get_if<Impedance>(&scenario.obstacle_bc); imp && scenario.obstacle) {
    ilambda = Complex{0.0, 1.0} * imp->lambda;
    robin = RobinTerm{BoundaryTag::ObstacleBoundary, ilambda};
  }
  const auto system = assemble(mesh, gamma, 0.0, nullptr, robin);
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());

  // Weak right-hand side from the flux mismatch of the singular part.
  Vector load = Vector::Zero(n);
  for (const auto& e : interface_edges(mesh, gamma)) {
    const double jump = e.gamma_in - e.gamma_out;
    add_edge_integral(mesh, e.side.a, e.side.b, [&](Point x, Point nu) { return Complex{-jump * dS(x, nu), 0.0}; },
                      load);
  }
  const auto edge_gamma = boundary_edge_gamma(mesh, gamma);
  Vector outer_term = Vector::Zero(n);
  const bool soft = scenario.obstacle && scenario.is_sound_soft();
  for (std::size_t k = 0; k < mesh.boundary_edges().size(); ++k) {
    const auto& e = mesh.boundary_edges()[k];
    const double ge = edge_gamma[k];
    if (e.tag == BoundaryTag::ObstacleBoundary) {
      if (soft) continue;
      add_edge_integral(
          mesh, e.v[0], e.v[1], [&](Point x, Point nu) { return -(ge * dS(x, nu) + ilambda * S(x)); }, load);
    } else {
      add_edge_integral(mesh, e.v[0], e.v[1], [&](Point x, Point nu) { return Complex{ge * dS(x, nu), 0.0}; },
                        outer_term);
    }
  }

  std::vector<bool> constrained = mesh.outer_boundary_mask();
  if (soft) {
    for (int v : mesh.boundary_vertices({BoundaryTag::ObstacleBoundary})) constrained[v] = true;
  }
  Vector data = Vector::Zero(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    if (constrained[static_cast<std::size_t>(v)]) data[v] = -S(mesh.vertices()[static_cast<std::size_t>(v)]);
  }
  const LinearSystem linear(system, constrained);
  g.w = Field{&mesh, linear.solve(data, load)};

  const Vector r = system.matrix * g.w.values - load + outer_term;
  const auto outer = mesh.outer_boundary_mask();
  g.boundary_flux.values = Vector::Zero(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    if (outer[static_cast<std::size_t>(v)]) g.boundary_flux.values[v] = r[v];
  }
  return g;
}

Complex representation_apply(const GreensFunction& g_at_x, const BoundaryTrace& f) {
  return -g_at_x.boundary_flux.values.cwiseProduct(f.values).sum();
}

std::vector<KernelSample> kernel_ratio_samples(const GreensFunction& g, double r_lo, double r_hi, int rings,
                                               int per_ring) {
  if (rings < 1 || per_ring < 1 || !(r_hi >= r_lo && r_lo > 0.0)) {
    fail(Errc::InvalidArgument, "kernel ratio rings need 0 < r_lo <= r_hi");
  }
  const PointLocator locator(*g.mesh);
  std::vector<KernelSample> out;
  for (int k = 0; k < rings; ++k) {
    const double r = rings == 1 ? r_lo : r_lo + (r_hi - r_lo) * k / (rings - 1);
    for (int m = 0; m < per_ring; ++m) {
      const Point x = g.source + from_polar(r, kTwoPi * (m + 0.5) / per_ring);
      if (!g.scenario->in_solution_domain(x) || !locator.locate(x)) continue;
      KernelSample s;
      s.x = x;
      s.y = g.source;
      s.green = g(x, locator).real();
      s.phi = fundamental_solution(x, g.source);
      s.ratio = s.green / s.phi;
      out.push_back(s);
    }
  }
  return out;
}

double interior_agreement(const Scenario& a, const Mesh& mesh_a, const Scenario& b, const Mesh& mesh_b,
                          const Window& window, const std::vector<Point>& sources) {
  std::vector<bool> selected(mesh_a.vertex_count(), false);
  for (std::size_t t = 0; t < mesh_a.triangle_count(); ++t) {
    if (!window(mesh_a.centroid(t), mesh_a.triangles()[t].region)) continue;
    for (int v : mesh_a.triangles()[t].v) selected[v] = true;
  }
  const PointLocator locator_b(mesh_b);
  const double min_dist = 3.0 * std::max(mesh_a.h(), mesh_b.h());
  double worst = 0.0;
  for (const Point& y : sources) {
    const auto ga = dirichlet_green(a, mesh_a, y);
    const auto gb = dirichlet_green(b, mesh_b, y);
    for (std::size_t v = 0; v < selected.size(); ++v) {
      const Point x = mesh_a.vertices()[v];
      if (!selected[v] || distance(x, y) < min_dist || !locator_b.locate(x)) continue;
      worst = std::max(worst, std::abs(ga.at_vertex(static_cast<int>(v)) - gb(x, locator_b)));
    }
  }
  return worst;
}

}  // namespace eit
