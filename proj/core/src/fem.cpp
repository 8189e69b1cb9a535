#include "eit/fem.hpp"

#include <cmath>
#include <sstream>

#include "eit/error.hpp"
#include "eit/polynomial.hpp"

namespace eit {

namespace {

using Triplet = Eigen::Triplet<Complex>;

void factorize(SparseLu& lu, const SparseMatrix& m) {
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    std::ostringstream os;
    os << "sparse LU factorisation failed (" << m.rows() << " unknowns): " << lu.lastErrorMessage();
    fail(Errc::SolveFailure, os.str());
  }
}

// Degree-5 seven-point rule on the reference triangle (barycentric, weight).
struct QuadPoint {
  double l0, l1, l2, w;
};

constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456;
constexpr double kW0 = 0.225, kW1 = 0.132394152788506, kW2 = 0.125939180544827;

constexpr std::array<QuadPoint, 7> kRule{{
    {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, kW0},
    {kA1, kB1, kB1, kW1},
    {kB1, kA1, kB1, kW1},
    {kB1, kB1, kA1, kW1},
    {kA2, kB2, kB2, kW2},
    {kB2, kA2, kB2, kW2},
    {kB2, kB2, kA2, kW2},
}};

template <typename Accumulate>
void for_window_triangles(const Field& u, const Window& window, Accumulate&& acc) {
  const Mesh& mesh = *u.mesh;
  bool any = false;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    if (!window(mesh.centroid(t), mesh.triangles()[t].region)) continue;
    any = true;
    acc(t);
  }
  if (!any) fail(Errc::EmptyWindow, "norm window selects no triangle");
}

double l2_squared(const Field& u, std::size_t t) {
  const auto& tri = u.mesh->triangles()[t];
  const double area = u.mesh->area(t);
  Complex s{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      s += (i == j ? 2.0 : 1.0) * u.values[tri.v[i]] * std::conj(u.values[tri.v[j]]);
    }
  }
  return area / 12.0 * s.real();
}

double grad_squared(const Field& u, std::size_t t) {
  const auto& tri = u.mesh->triangles()[t];
  const auto g = barycentric_gradients(*u.mesh, t);
  Complex gx{0.0, 0.0}, gy{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    gx += u.values[tri.v[i]] * g[i].x;
    gy += u.values[tri.v[i]] * g[i].y;
  }
  return u.mesh->area(t) * (std::norm(gx) + std::norm(gy));
}

}  // namespace

std::array<Point, 3> barycentric_gradients(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles()[t];
  const Point p0 = mesh.vertices()[tri.v[0]];
  const Point p1 = mesh.vertices()[tri.v[1]];
  const Point p2 = mesh.vertices()[tri.v[2]];
  const double twice_area = cross(p1 - p0, p2 - p0);
  // grad lambda_i = rot90(opposite edge) / (2 area)
  auto g = [twice_area](Point a, Point b) { return Point{(a.y - b.y) / twice_area, (b.x - a.x) / twice_area}; };
  return {g(p1, p2), g(p2, p0), g(p0, p1)};
}

GalerkinSystem assemble(const Mesh& mesh, std::span<const double> a, double b, const Field* rho,
                        std::optional<RobinTerm> robin) {
  if (a.size() != mesh.triangle_count()) {
    fail(Errc::InvalidArgument, "coefficient count differs from triangle count");
  }
  if (!(b >= 0.0)) fail(Errc::InvalidArgument, "reaction coefficient must be nonnegative");
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  std::vector<Triplet> trip;
  trip.reserve(mesh.triangle_count() * 9 + (robin ? mesh.boundary_edges().size() * 4 : 0));
  Vector load = Vector::Zero(n);

  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    if (!(a[t] > 0.0)) fail(Errc::InvalidArgument, "diffusion coefficient must be positive");
    const auto& tri = mesh.triangles()[t];
    const auto g = barycentric_gradients(mesh, t);
    const double area = mesh.area(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double k = a[t] * area * dot(g[i], g[j]);
        const double m = b * area / 12.0 * (i == j ? 2.0 : 1.0);
        trip.emplace_back(tri.v[i], tri.v[j], Complex{k + m, 0.0});
      }
    }
    if (rho) {
      for (int i = 0; i < 3; ++i) {
        Complex s{0.0, 0.0};
        for (int j = 0; j < 3; ++j) s += (i == j ? 2.0 : 1.0) * rho->values[tri.v[j]];
        load[tri.v[i]] -= area / 12.0 * s;
      }
    }
  }
  if (robin && robin->coefficient != Complex{0.0, 0.0}) {
    for (const auto& e : mesh.boundary_edges()) {
      if (e.tag != robin->tag) continue;
      const double len = distance(mesh.vertices()[e.v[0]], mesh.vertices()[e.v[1]]);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          trip.emplace_back(e.v[i], e.v[j], robin->coefficient * len / 6.0 * (i == j ? 2.0 : 1.0));
        }
      }
    }
  }
  GalerkinSystem sys;
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  sys.matrix.makeCompressed();
  sys.load = std::move(load);
  return sys;
}

LinearSystem::LinearSystem(const GalerkinSystem& system, std::vector<bool> constrained)
    : full_(system.matrix), load_(system.load), constrained_(std::move(constrained)) {
  const auto n = static_cast<std::size_t>(full_.rows());
  if (constrained_.size() != n) fail(Errc::InvalidArgument, "constraint mask has the wrong size");
  free_index_.assign(n, -1);
  std::vector<int> constrained_index(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (constrained_[i]) {
      constrained_index[i] = static_cast<int>(constrained_vertices_.size());
      constrained_vertices_.push_back(static_cast<int>(i));
    } else {
      free_index_[i] = static_cast<int>(free_vertices_.size());
      free_vertices_.push_back(static_cast<int>(i));
    }
  }
  if (free_vertices_.empty()) fail(Errc::InvalidArgument, "no free nodes");
  std::vector<Triplet> ff, fc;
  for (int k = 0; k < full_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(full_, k); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (constrained_[r]) continue;
      if (constrained_[c]) {
        fc.emplace_back(free_index_[r], constrained_index[c], it.value());
      } else {
        ff.emplace_back(free_index_[r], free_index_[c], it.value());
      }
    }
  }
  const auto nf = static_cast<Eigen::Index>(free_vertices_.size());
  const auto nc = static_cast<Eigen::Index>(constrained_vertices_.size());
  reduced_.resize(nf, nf);
  reduced_.setFromTriplets(ff.begin(), ff.end());
  reduced_.makeCompressed();
  coupling_.resize(nf, nc);
  coupling_.setFromTriplets(fc.begin(), fc.end());
  lu_ = std::make_shared<SparseLu>();
  factorize(*lu_, reduced_);
}

Vector LinearSystem::solve(const Vector& constrained_values) const { return solve(constrained_values, load_); }

Vector LinearSystem::solve(const Vector& constrained_values, const Vector& load) const {
  const auto n = full_.rows();
  if (constrained_values.size() != n || load.size() != n) {
    fail(Errc::InvalidArgument, "vector length differs from node count");
  }
  Vector gc(static_cast<Eigen::Index>(constrained_vertices_.size()));
  for (std::size_t k = 0; k < constrained_vertices_.size(); ++k) gc[k] = constrained_values[constrained_vertices_[k]];
  Vector rhs(static_cast<Eigen::Index>(free_vertices_.size()));
  for (std::size_t k = 0; k < free_vertices_.size(); ++k) rhs[k] = load[free_vertices_[k]];
  if (gc.size() > 0) rhs -= coupling_ * gc;
  const Vector uf = lu_->solve(rhs);
  if (lu_->info() != Eigen::Success || !uf.allFinite()) fail(Errc::SolveFailure, "sparse solve failed");
  Vector u(n);
  for (std::size_t k = 0; k < free_vertices_.size(); ++k) u[free_vertices_[k]] = uf[k];
  for (std::size_t k = 0; k < constrained_vertices_.size(); ++k) u[constrained_vertices_[k]] = gc[k];
  return u;
}

Field interpolate(const Mesh& mesh, const std::function<Complex(Point)>& fn) {
  Field f = Field::zero(mesh);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) f.values[i] = fn(mesh.vertices()[i]);
  return f;
}

BoundaryTrace trace(const Field& u, std::initializer_list<BoundaryTag> tags) {
  BoundaryTrace out{Vector::Zero(u.values.size())};
  for (int v : u.mesh->boundary_vertices(tags)) out.values[v] = u.values[v];
  return out;
}

BoundaryTrace trace(const Field& u, BoundaryTag tag) { return trace(u, {tag}); }

Eigen::SparseMatrix<double> boundary_mass(const Mesh& mesh, std::initializer_list<BoundaryTag> tags) {
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& e : mesh.boundary_edges()) {
    if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
    const double len = distance(mesh.vertices()[e.v[0]], mesh.vertices()[e.v[1]]);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) trip.emplace_back(e.v[i], e.v[j], len / 6.0 * (i == j ? 2.0 : 1.0));
    }
  }
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

BoundaryFunctional boundary_functional(const Mesh& mesh, std::initializer_list<BoundaryTag> tags,
                                       const std::function<Complex(Point, Point)>& g) {
  static const auto rule = gauss_legendre(5, 0.0, 1.0);
  BoundaryFunctional out{Vector::Zero(static_cast<Eigen::Index>(mesh.vertex_count()))};
  for (const auto& e : mesh.boundary_edges()) {
    if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
    const Point a = mesh.vertices()[e.v[0]];
    const Point b = mesh.vertices()[e.v[1]];
    const double len = distance(a, b);
    const Point nu{(b.y - a.y) / len, (a.x - b.x) / len};
    for (const auto& [s, w] : rule) {
      const Complex val = w * len * g((1.0 - s) * a + s * b, nu);
      out.values[e.v[0]] += (1.0 - s) * val;
      out.values[e.v[1]] += s * val;
    }
  }
  return out;
}

ForwardSolver::ForwardSolver(const Scenario& scenario, const Mesh& mesh) : mesh_(&mesh) {
  const auto gamma = conductivity_field(scenario, mesh);
  std::optional<RobinTerm> robin;
  if (const auto* imp = std::get_if<Impedance>(&scenario.obstacle_bc); imp && scenario.obstacle) {
    robin = RobinTerm{BoundaryTag::ObstacleBoundary, Complex{0.0, 1.0} * imp->lambda};
  }
  system_ = assemble(mesh, gamma, 0.0, nullptr, robin);
  outer_ = mesh.outer_boundary_mask();
  std::vector<bool> constrained = outer_;
  if (scenario.obstacle && scenario.is_sound_soft()) {
    for (int v : mesh.boundary_vertices({BoundaryTag::ObstacleBoundary})) constrained[v] = true;
  }
  linear_ = std::make_unique<LinearSystem>(system_, std::move(constrained));
}

Field ForwardSolver::solve(const BoundaryTrace& f) const {
  if (f.values.size() != static_cast<Eigen::Index>(mesh_->vertex_count())) {
    fail(Errc::InvalidArgument, "boundary trace length differs from vertex count");
  }
  Vector g = Vector::Zero(f.values.size());
  for (std::size_t i = 0; i < outer_.size(); ++i) {
    if (outer_[i]) g[i] = f.values[i];
  }
  Field u{mesh_, linear_->solve(g)};
  return u;
}

BoundaryFunctional ForwardSolver::weak_flux(const Field& u) const {
  const Vector r = system_.matrix * u.values - system_.load;
  BoundaryFunctional g{Vector::Zero(r.size())};
  for (std::size_t i = 0; i < outer_.size(); ++i) {
    if (outer_[i]) g.values[i] = r[i];
  }
  return g;
}

Field solve_forward(const Scenario& scenario, const Mesh& mesh, const BoundaryTrace& f) {
  return ForwardSolver(scenario, mesh).solve(f);
}

BoundaryFunctional weak_flux(const Scenario& scenario, const Mesh& mesh, const Field& u) {
  const auto gamma = conductivity_field(scenario, mesh);
  std::optional<RobinTerm> robin;
  if (const auto* imp = std::get_if<Impedance>(&scenario.obstacle_bc); imp && scenario.obstacle) {
    robin = RobinTerm{BoundaryTag::ObstacleBoundary, Complex{0.0, 1.0} * imp->lambda};
  }
  const auto sys = assemble(mesh, gamma, 0.0, nullptr, robin);
  const Vector r = sys.matrix * u.values;
  const auto outer = mesh.outer_boundary_mask();
  BoundaryFunctional g{Vector::Zero(r.size())};
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (outer[i]) g.values[i] = r[i];
  }
  return g;
}

double l2_norm(const Field& u, const Window& window) {
  double s = 0.0;
  for_window_triangles(u, window, [&](std::size_t t) { s += l2_squared(u, t); });
  return std::sqrt(std::max(s, 0.0));
}

double h1_seminorm(const Field& u, const Window& window) {
  double s = 0.0;
  for_window_triangles(u, window, [&](std::size_t t) { s += grad_squared(u, t); });
  return std::sqrt(s);
}

double h1_norm(const Field& u, const Window& window) {
  double s = 0.0;
  for_window_triangles(u, window, [&](std::size_t t) { s += l2_squared(u, t) + grad_squared(u, t); });
  return std::sqrt(std::max(s, 0.0));
}

ErrorNorms error_norms(const Field& u, const ScalarFn& exact, const GradientFn& gradient) {
  const Mesh& mesh = *u.mesh;
  double l2 = 0.0, semi = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto g = barycentric_gradients(mesh, t);
    Complex gx{0.0, 0.0}, gy{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      gx += u.values[tri.v[i]] * g[i].x;
      gy += u.values[tri.v[i]] * g[i].y;
    }
    const Point p0 = mesh.vertices()[tri.v[0]];
    const Point p1 = mesh.vertices()[tri.v[1]];
    const Point p2 = mesh.vertices()[tri.v[2]];
    const double area = mesh.area(t);
    for (const auto& q : kRule) {
      const Point x = q.l0 * p0 + q.l1 * p1 + q.l2 * p2;
      const Complex uh = q.l0 * u.values[tri.v[0]] + q.l1 * u.values[tri.v[1]] + q.l2 * u.values[tri.v[2]];
      const auto ge = gradient(x, tri.region);
      l2 += q.w * area * std::norm(uh - exact(x, tri.region));
      semi += q.w * area * (std::norm(gx - ge[0]) + std::norm(gy - ge[1]));
    }
  }
  return {std::sqrt(l2), std::sqrt(semi), std::sqrt(l2 + semi)};
}

}  // namespace eit
