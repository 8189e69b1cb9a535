#include "eit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "eit/error.hpp"

namespace eit {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

double signed_area(Point a, Point b, Point c) { return 0.5 * cross(b - a, c - a); }

// Circle through both endpoints, if any.
std::optional<Circle> common_circle(const std::vector<Circle>& circles, Point a, Point b) {
  for (const auto& c : circles) {
    const double tol = 1e-9 * std::max(1.0, c.radius);
    if (std::abs(distance(a, c.center) - c.radius) < tol &&
        std::abs(distance(b, c.center) - c.radius) < tol) {
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
           std::vector<BoundaryEdge> boundary_edges, std::vector<Circle> circles)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_edges_(std::move(boundary_edges)),
      circles_(std::move(circles)) {
  for (std::size_t t = 0; t < triangles_.size(); ++t) h_ = std::max(h_, diameter(t));
}

double Mesh::area(std::size_t t) const {
  const auto& v = triangles_[t].v;
  return signed_area(vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]);
}

double Mesh::diameter(std::size_t t) const {
  const auto& v = triangles_[t].v;
  const Point a = vertices_[v[0]], b = vertices_[v[1]], c = vertices_[v[2]];
  return std::max({distance(a, b), distance(b, c), distance(c, a)});
}

Point Mesh::centroid(std::size_t t) const {
  const auto& v = triangles_[t].v;
  return (1.0 / 3.0) * (vertices_[v[0]] + vertices_[v[1]] + vertices_[v[2]]);
}

double Mesh::total_area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) s += area(t);
  return s;
}

std::vector<int> Mesh::boundary_vertices(std::initializer_list<BoundaryTag> tags) const {
  std::vector<bool> mark(vertices_.size(), false);
  for (const auto& e : boundary_edges_) {
    if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
    mark[e.v[0]] = mark[e.v[1]] = true;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < mark.size(); ++i) {
    if (mark[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Mesh::boundary_vertices() const {
  return boundary_vertices(
      {BoundaryTag::GammaArc, BoundaryTag::OuterRest, BoundaryTag::ObstacleBoundary});
}

std::vector<bool> Mesh::outer_boundary_mask() const {
  std::vector<bool> mark(vertices_.size(), false);
  for (const auto& e : boundary_edges_) {
    if (e.tag == BoundaryTag::ObstacleBoundary) continue;
    mark[e.v[0]] = mark[e.v[1]] = true;
  }
  return mark;
}

void Mesh::check_invariants() const {
  auto bad = [](const std::string& msg) { fail(Errc::InvalidArgument, "mesh invariant: " + msg); };
  std::map<EdgeKey, int> count;
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& v = triangles_[t].v;
    for (int i : v) {
      if (i < 0 || static_cast<std::size_t>(i) >= vertices_.size()) bad("vertex index out of range");
    }
    if (!(area(t) > 0.0)) {
      std::ostringstream os;
      os << "triangle " << t << " has non-positive area " << area(t);
      bad(os.str());
    }
    for (int k = 0; k < 3; ++k) {
      const int a = v[k], b = v[(k + 1) % 3];
      ++count[edge_key(a, b)];
      ++directed[{a, b}];
    }
  }
  std::size_t open = 0;
  for (const auto& [key, n] : count) {
    if (n > 2) bad("edge shared by more than two triangles");
    if (n == 1) ++open;
  }
  if (open != boundary_edges_.size()) {
    std::ostringstream os;
    os << open << " open edges but " << boundary_edges_.size() << " tagged boundary edges";
    bad(os.str());
  }
  for (const auto& e : boundary_edges_) {
    auto it = count.find(edge_key(e.v[0], e.v[1]));
    if (it == count.end() || it->second != 1) bad("tagged boundary edge is not an open edge");
    if (!directed.contains({e.v[0], e.v[1]})) bad("boundary edge orientation does not match its triangle");
  }
  std::vector<bool> used(vertices_.size(), false);
  for (const auto& tri : triangles_) {
    for (int i : tri.v) used[i] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) bad("unreferenced vertex");
}

Mesh refine(const Mesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  const auto& tris = mesh.triangles();

  std::map<EdgeKey, std::vector<int>> edge_regions;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) edge_regions[edge_key(t.v[k], t.v[(k + 1) % 3])].push_back(t.region);
  }
  std::map<EdgeKey, int> midpoint;
  for (const auto& [key, regions] : edge_regions) {
    const Point a = vertices[key.first], b = vertices[key.second];
    Point m = 0.5 * (a + b);
    const bool on_boundary = regions.size() == 1;
    const bool on_interface = regions.size() == 2 && regions[0] != regions[1];
    if (on_boundary || on_interface) {
      if (auto c = common_circle(mesh.circles(), a, b)) {
        const Point d = m - c->center;
        m = c->center + (c->radius / norm(d)) * d;
      }
    }
    midpoint[key] = static_cast<int>(vertices.size());
    vertices.push_back(m);
  }

  std::vector<Triangle> out;
  out.reserve(4 * tris.size());
  for (const auto& t : tris) {
    const int a = t.v[0], b = t.v[1], c = t.v[2];
    const int ab = midpoint.at(edge_key(a, b));
    const int bc = midpoint.at(edge_key(b, c));
    const int ca = midpoint.at(edge_key(c, a));
    out.push_back({{a, ab, ca}, t.region});
    out.push_back({{ab, b, bc}, t.region});
    out.push_back({{ca, bc, c}, t.region});
    out.push_back({{ab, bc, ca}, t.region});
  }
  std::vector<BoundaryEdge> edges;
  edges.reserve(2 * mesh.boundary_edges().size());
  for (const auto& e : mesh.boundary_edges()) {
    const int m = midpoint.at(edge_key(e.v[0], e.v[1]));
    edges.push_back({{e.v[0], m}, e.tag});
    edges.push_back({{m, e.v[1]}, e.tag});
  }
  return Mesh(std::move(vertices), std::move(out), std::move(edges), mesh.circles());
}

std::vector<double> conductivity_field(const Scenario& scenario, const Mesh& mesh) {
  std::vector<double> gamma(mesh.triangle_count());
  for (std::size_t t = 0; t < gamma.size(); ++t) {
    const int r = mesh.triangles()[t].region;
    if (r < 0 || static_cast<std::size_t>(r) >= scenario.regions.size()) {
      std::ostringstream os;
      os << "triangle " << t << " carries region tag " << r << " with no matching region";
      fail(Errc::TagMismatch, os.str());
    }
    gamma[t] = scenario.regions[r].conductivity;
  }
  return gamma;
}

Window whole_domain() {
  return [](Point, int) { return true; };
}

Window ball_window(Point center, double radius) {
  return [center, radius](Point c, int) { return distance(c, center) < radius; };
}

Window outside_ball_window(Point center, double radius) {
  return [center, radius](Point c, int) { return distance(c, center) >= radius; };
}

Submesh extract_submesh(const Mesh& mesh, const Window& window) {
  Submesh sub;
  std::vector<int> local(mesh.vertex_count(), -1);
  std::vector<Point> vertices;
  std::vector<Triangle> tris;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    if (!window(mesh.centroid(t), tri.region)) continue;
    Triangle lt{{}, tri.region};
    for (int k = 0; k < 3; ++k) {
      const int g = tri.v[k];
      if (local[g] < 0) {
        local[g] = static_cast<int>(vertices.size());
        vertices.push_back(mesh.vertices()[g]);
        sub.parent_vertex.push_back(g);
      }
      lt.v[k] = local[g];
    }
    tris.push_back(lt);
    sub.parent_triangle.push_back(static_cast<int>(t));
  }
  if (tris.empty()) fail(Errc::EmptyWindow, "window selects no triangle");

  std::map<EdgeKey, int> count;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) ++count[edge_key(t.v[k], t.v[(k + 1) % 3])];
  }
  std::map<EdgeKey, BoundaryTag> parent_tags;
  for (const auto& e : mesh.boundary_edges()) parent_tags[edge_key(e.v[0], e.v[1])] = e.tag;

  std::vector<BoundaryEdge> edges;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      const int a = t.v[k], b = t.v[(k + 1) % 3];
      if (count[edge_key(a, b)] != 1) continue;
      const auto it = parent_tags.find(edge_key(sub.parent_vertex[a], sub.parent_vertex[b]));
      edges.push_back({{a, b}, it != parent_tags.end() ? it->second : BoundaryTag::OuterRest});
    }
  }
  sub.mesh = Mesh(std::move(vertices), std::move(tris), std::move(edges), mesh.circles());
  return sub;
}

PointLocator::PointLocator(const Mesh& mesh) : mesh_(&mesh) {
  const auto& vs = mesh.vertices();
  Point lo{1e300, 1e300}, hi{-1e300, -1e300};
  for (const auto& p : vs) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double pad = 1e-9 * std::max(1.0, std::max(hi.x - lo.x, hi.y - lo.y));
  lo_ = lo - Point{pad, pad};
  const int n = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(mesh.triangle_count())) / 2));
  cell_ = std::max(hi.x - lo.x, hi.y - lo.y) / n + 4 * pad;
  nx_ = static_cast<int>((hi.x - lo_.x) / cell_) + 1;
  ny_ = static_cast<int>((hi.y - lo_.y) / cell_) + 1;
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& v = mesh.triangles()[t].v;
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (int i : v) {
      x0 = std::min(x0, vs[i].x);
      y0 = std::min(y0, vs[i].y);
      x1 = std::max(x1, vs[i].x);
      y1 = std::max(y1, vs[i].y);
    }
    const int i0 = std::clamp(static_cast<int>((x0 - lo_.x) / cell_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((x1 - lo_.x) / cell_), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>((y0 - lo_.y) / cell_), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((y1 - lo_.y) / cell_), 0, ny_ - 1);
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(static_cast<int>(t));
    }
  }
}

std::array<double, 3> PointLocator::barycentric(int t, Point p) const {
  const auto& v = mesh_->triangles()[t].v;
  const auto& vs = mesh_->vertices();
  const Point a = vs[v[0]], b = vs[v[1]], c = vs[v[2]];
  const double area2 = cross(b - a, c - a);
  const double l1 = cross(c - b, p - b) / area2;
  const double l2 = cross(a - c, p - c) / area2;
  return {l1, l2, 1.0 - l1 - l2};
}

std::optional<int> PointLocator::locate(Point p) const {
  const int i = static_cast<int>(std::floor((p.x - lo_.x) / cell_));
  const int j = static_cast<int>(std::floor((p.y - lo_.y) / cell_));
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
  constexpr double kTol = -1e-12;
  std::optional<int> best;
  double best_min = -1e300;
  for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
    const auto l = barycentric(t, p);
    const double m = std::min({l[0], l[1], l[2]});
    if (m >= kTol) return t;
    if (m > best_min) {
      best_min = m;
      best = t;
    }
  }
  // Points within round-off of the mesh boundary.
  if (best && best_min > -1e-9) return best;
  return std::nullopt;
}

std::vector<int> match_outer_boundary(const Mesh& a, const Mesh& b, double tol) {
  const auto mask_a = a.outer_boundary_mask();
  const auto mask_b = b.outer_boundary_mask();
  std::vector<int> ids_b;
  for (std::size_t i = 0; i < mask_b.size(); ++i) {
    if (mask_b[i]) ids_b.push_back(static_cast<int>(i));
  }
  auto less = [&](int i, int j) {
    const Point p = b.vertices()[i], q = b.vertices()[j];
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  };
  std::sort(ids_b.begin(), ids_b.end(), less);

  std::vector<int> map(a.vertex_count(), -1);
  std::size_t matched = 0;
  for (std::size_t i = 0; i < mask_a.size(); ++i) {
    if (!mask_a[i]) continue;
    const Point p = a.vertices()[i];
    auto it = std::lower_bound(ids_b.begin(), ids_b.end(), p, [&](int k, Point q) {
      return b.vertices()[k].x < q.x - tol;
    });
    for (; it != ids_b.end() && b.vertices()[*it].x <= p.x + tol; ++it) {
      if (distance(b.vertices()[*it], p) <= tol) {
        map[i] = *it;
        ++matched;
        break;
      }
    }
    if (map[i] < 0) {
      std::ostringstream os;
      os << "outer boundary vertex (" << p.x << ", " << p.y << ") has no counterpart";
      fail(Errc::BoundaryMismatch, os.str());
    }
  }
  if (matched != ids_b.size()) fail(Errc::BoundaryMismatch, "outer boundary vertex counts differ");
  return map;
}

}  // namespace eit
