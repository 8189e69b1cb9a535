#include "eit/dtn.hpp"

#include <cmath>

#include "eit/error.hpp"
#include "eit/serialize.hpp"

namespace eit {

bool operator==(const DtnMatrix& a, const DtnMatrix& b) {
  return a.vertices == b.vertices && a.points == b.points && a.gamma.begin == b.gamma.begin &&
         a.gamma.end == b.gamma.end && a.matrix.rows() == b.matrix.rows() &&
         a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix &&
         a.scenario_hash == b.scenario_hash && a.h == b.h;
}

bool operator==(const CauchyDataset& a, const CauchyDataset& b) {
  if (!(a.vertices == b.vertices && a.points == b.points && a.gamma.begin == b.gamma.begin &&
        a.gamma.end == b.gamma.end && a.scenario_hash == b.scenario_hash && a.h == b.h &&
        a.pairs.size() == b.pairs.size())) {
    return false;
  }
  for (std::size_t k = 0; k < a.pairs.size(); ++k) {
    if (a.pairs[k].trace != b.pairs[k].trace || a.pairs[k].flux != b.pairs[k].flux) return false;
  }
  return true;
}

std::vector<int> gamma_interior_vertices(const Mesh& mesh) {
  std::vector<int> gamma_edges(mesh.vertex_count(), 0), other_edges(mesh.vertex_count(), 0);
  for (const auto& e : mesh.boundary_edges()) {
    if (e.tag == BoundaryTag::ObstacleBoundary) continue;
    auto& count = e.tag == BoundaryTag::GammaArc ? gamma_edges : other_edges;
    ++count[e.v[0]];
    ++count[e.v[1]];
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (gamma_edges[v] > 0 && other_edges[v] == 0) out.push_back(static_cast<int>(v));
  }
  return out;
}

Vector scatter(const Mesh& mesh, const std::vector<int>& vertices, const Vector& values) {
  Vector full = Vector::Zero(static_cast<Eigen::Index>(mesh.vertex_count()));
  for (std::size_t k = 0; k < vertices.size(); ++k) full[vertices[k]] = values[static_cast<Eigen::Index>(k)];
  return full;
}

Vector gather(const std::vector<int>& vertices, const Vector& full) {
  Vector out(static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t k = 0; k < vertices.size(); ++k) out[static_cast<Eigen::Index>(k)] = full[vertices[k]];
  return out;
}

BoundaryFunctional dtn_apply(const ForwardSolver& solver, const BoundaryTrace& f) {
  const auto gamma = gamma_interior_vertices(solver.mesh());
  const BoundaryTrace restricted{scatter(solver.mesh(), gamma, gather(gamma, f.values))};
  const Field u = solver.solve(restricted);
  const auto flux = solver.weak_flux(u);
  return {scatter(solver.mesh(), gamma, gather(gamma, flux.values))};
}

BoundaryFunctional dtn_apply(const Scenario& scenario, const Mesh& mesh, const BoundaryTrace& f) {
  return dtn_apply(ForwardSolver(scenario, mesh), f);
}

DtnMatrix local_dtn_matrix(const Scenario& scenario, const Mesh& mesh) {
  DtnMatrix out;
  out.vertices = gamma_interior_vertices(mesh);
  if (out.vertices.empty()) fail(Errc::InvalidArgument, "measurement arc carries no interior vertex");
  for (int v : out.vertices) out.points.push_back(mesh.vertices()[v]);
  out.gamma = scenario.gamma_arc;
  out.scenario_hash = scenario_hash(scenario);
  out.h = mesh.h();

  const ForwardSolver solver(scenario, mesh);
  const auto n = static_cast<Eigen::Index>(out.vertices.size());
  out.matrix.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    BoundaryTrace e{Vector::Zero(static_cast<Eigen::Index>(mesh.vertex_count()))};
    e.values[out.vertices[j]] = 1.0;
    const Field u = solver.solve(e);
    const auto flux = solver.weak_flux(u);
    out.matrix.col(j) = gather(out.vertices, flux.values);
  }
  return out;
}

double symmetry_defect(const Eigen::MatrixXcd& m) {
  const double scale = m.norm();
  if (scale == 0.0) return 0.0;
  return (m - m.transpose()).norm() / scale;
}

double mode_pairing(const Mesh& mesh, const BoundaryTrace& f, const BoundaryFunctional& flux) {
  const auto mass = boundary_mass(mesh, {BoundaryTag::GammaArc, BoundaryTag::OuterRest});
  const Eigen::VectorXd re = f.values.real(), im = f.values.imag();
  const double denom = re.dot(mass * re) + im.dot(mass * im);
  if (!(denom > 0.0)) fail(Errc::ZeroData, "mode pairing needs nonzero boundary data");
  return flux.values.dot(f.values).real() / denom;
}

BoundaryTrace fourier_mode(const Mesh& mesh, int n, bool sine) {
  BoundaryTrace f{Vector::Zero(static_cast<Eigen::Index>(mesh.vertex_count()))};
  const auto mask = mesh.outer_boundary_mask();
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v]) continue;
    const double t = polar_angle(mesh.vertices()[v]);
    f.values[static_cast<Eigen::Index>(v)] = sine ? std::sin(n * t) : std::cos(n * t);
  }
  return f;
}

CauchyDataset cauchy_dataset(const Scenario& scenario, const Mesh& mesh, const std::vector<BoundaryTrace>& traces) {
  if (traces.empty()) fail(Errc::InvalidArgument, "a Cauchy dataset needs at least one trace");
  CauchyDataset out;
  out.vertices = gamma_interior_vertices(mesh);
  for (int v : out.vertices) out.points.push_back(mesh.vertices()[v]);
  out.gamma = scenario.gamma_arc;
  out.scenario_hash = scenario_hash(scenario);
  out.h = mesh.h();
  const ForwardSolver solver(scenario, mesh);
  for (const auto& f : traces) {
    const auto flux = dtn_apply(solver, f);
    out.pairs.push_back({gather(out.vertices, f.values), gather(out.vertices, flux.values)});
  }
  return out;
}

BoundaryNorms::BoundaryNorms(const Mesh& mesh) : mesh_(&mesh) {
  const std::vector<double> ones(mesh.triangle_count(), 1.0);
  boundary_.assign(mesh.vertex_count(), false);
  for (int v : mesh.boundary_vertices()) boundary_[v] = true;
  dirichlet_ = std::make_unique<LinearSystem>(assemble(mesh, ones, 0.0), boundary_);
  neumann_ = std::make_unique<LinearSystem>(assemble(mesh, ones, 1.0), std::vector<bool>(mesh.vertex_count(), false));
}

Field BoundaryNorms::harmonic_extension(const BoundaryTrace& g) const {
  Vector data = Vector::Zero(static_cast<Eigen::Index>(mesh_->vertex_count()));
  for (std::size_t v = 0; v < boundary_.size(); ++v) {
    if (boundary_[v]) data[static_cast<Eigen::Index>(v)] = g.values[static_cast<Eigen::Index>(v)];
  }
  return {mesh_, dirichlet_->solve(data)};
}

double BoundaryNorms::h_half(const BoundaryTrace& g) const {
  if (g.values.isZero(0.0)) return 0.0;
  return h1_norm(harmonic_extension(g));
}

double BoundaryNorms::h_minus_half(const BoundaryFunctional& g) const {
  if (g.values.isZero(0.0)) return 0.0;
  const Vector zero = Vector::Zero(g.values.size());
  return h1_norm(Field{mesh_, neumann_->solve(zero, g.values)});
}

double h_half_norm(const Mesh& mesh, const BoundaryTrace& g) { return BoundaryNorms(mesh).h_half(g); }

double h_minus_half_norm(const Mesh& mesh, const BoundaryFunctional& g) {
  return BoundaryNorms(mesh).h_minus_half(g);
}

}  // namespace eit
