// Structured, interface-aligned triangulations for disks (polar rings joined
// by zipper strips) and rectangles (tensor grids).

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "eit/error.hpp"
#include "eit/mesh.hpp"

namespace eit {

namespace {

constexpr double kAngleTol = 1e-12;

struct Ring {
  double radius = 0.0;
  std::vector<int> nodes;            // ordered by angle, starting at breakpoint 0
  std::vector<std::size_t> sector_start;  // index of each breakpoint node
};

void make_ccw(const std::vector<Point>& vs, std::array<int, 3>& v) {
  if (cross(vs[v[1]] - vs[v[0]], vs[v[2]] - vs[v[0]]) < 0.0) std::swap(v[1], v[2]);
}

std::vector<double> unique_sorted_angles(std::vector<double> angles) {
  for (auto& a : angles) a = wrap_angle(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles) {
    if (out.empty() || a - out.back() > kAngleTol) out.push_back(a);
  }
  if (out.size() > 1 && kTwoPi - out.back() + out.front() <= kAngleTol) out.pop_back();
  if (out.empty()) out.push_back(0.0);
  return out;
}

// Does region membership change across the circle of radius r?
bool is_radial_interface(const Scenario& s, double r) {
  constexpr int kSamples = 64;
  for (int k = 0; k < kSamples; ++k) {
    const double t = kTwoPi * (k + 0.5) / kSamples;
    const auto a = s.region_of(from_polar(r * (1.0 - 1e-9), t));
    const auto b = s.region_of(from_polar(r * (1.0 + 1e-9), t));
    if (a && b && *a != *b) return true;
  }
  return false;
}

bool is_angular_interface(const Scenario& s, double theta, double r_lo, double r_hi) {
  constexpr int kSamples = 64;
  for (int k = 0; k < kSamples; ++k) {
    const double r = r_lo + (r_hi - r_lo) * (k + 0.5) / kSamples;
    const auto a = s.region_of(from_polar(r, theta - 1e-9));
    const auto b = s.region_of(from_polar(r, theta + 1e-9));
    if (a && b && *a != *b) return true;
  }
  return false;
}

std::vector<Triangle> zipper(const std::vector<Point>& vs, const std::vector<int>& inner,
                             const std::vector<int>& outer) {
  std::vector<Triangle> out;
  std::size_t i = 0, k = 0;
  const std::size_t ni = inner.size() - 1, no = outer.size() - 1;
  while (i < ni || k < no) {
    bool advance_inner;
    if (i == ni) {
      advance_inner = false;
    } else if (k == no) {
      advance_inner = true;
    } else {
      const double d_inner = distance(vs[inner[i + 1]], vs[outer[k]]);
      const double d_outer = distance(vs[inner[i]], vs[outer[k + 1]]);
      advance_inner = d_inner < d_outer;
    }
    Triangle t;
    if (advance_inner) {
      t.v = {inner[i], inner[i + 1], outer[k]};
      ++i;
    } else {
      t.v = {inner[i], outer[k + 1], outer[k]};
      ++k;
    }
    make_ccw(vs, t.v);
    out.push_back(t);
  }
  return out;
}

// Nodes of a ring belonging to sector s, including the closing breakpoint.
std::vector<int> sector_nodes(const Ring& ring, std::size_t s) {
  const std::size_t begin = ring.sector_start[s];
  const std::size_t end = s + 1 < ring.sector_start.size() ? ring.sector_start[s + 1] : ring.nodes.size();
  std::vector<int> out(ring.nodes.begin() + static_cast<std::ptrdiff_t>(begin),
                       ring.nodes.begin() + static_cast<std::ptrdiff_t>(end));
  out.push_back(end < ring.nodes.size() ? ring.nodes[end] : ring.nodes.front());
  return out;
}

struct DiskLayout {
  double r_min = 0.0;
  double radius = 1.0;
  std::vector<double> radial_breaks;  // r_min, interfaces..., radius
  std::vector<double> angles;         // angular breakpoints
  std::vector<double> interface_radii;
};

DiskLayout disk_layout(const Scenario& s, const MeshOptions& options) {
  DiskLayout lay;
  lay.radius = std::get<DiskDomain>(s.domain).radius;
  if (s.obstacle) {
    if (norm(s.obstacle->center) > 1e-12) {
      fail(Errc::UnmeshableGeometry, "the polar mesher needs the obstacle concentric with the disk");
    }
    lay.r_min = s.obstacle->radius;
  }

  std::vector<double> radii;
  std::vector<double> angles = options.extra_angles;
  for (const auto& reg : s.regions) {
    if (const auto* b = std::get_if<BandRegion>(&reg.shape)) {
      radii.push_back(b->r_in);
      radii.push_back(b->r_out);
    } else if (const auto* sec = std::get_if<SectorRegion>(&reg.shape)) {
      radii.push_back(sec->r_in);
      radii.push_back(sec->r_out);
      if (sec->theta_end - sec->theta_begin < kTwoPi - kAngleTol) {
        const double lo = std::max(sec->r_in, lay.r_min);
        const double hi = std::min(sec->r_out, lay.radius);
        for (double t : {sec->theta_begin, sec->theta_end}) {
          if (is_angular_interface(s, t, lo, hi)) {
            if (sec->r_in <= lay.r_min && s.obstacle) {
              fail(Errc::DegenerateGeometry, "a radial interface touches the obstacle");
            }
            angles.push_back(t);
          }
        }
      }
    } else {
      fail(Errc::UnmeshableGeometry, "half-plane regions are only supported on rectangles");
    }
  }
  const double tol = 1e-12 * lay.radius;
  std::sort(radii.begin(), radii.end());
  for (double r : radii) {
    if (!(r > tol && r < lay.radius - tol) || !std::isfinite(r)) continue;
    if (!lay.interface_radii.empty() && r - lay.interface_radii.back() <= tol) continue;
    if (!is_radial_interface(s, r)) continue;
    if (s.obstacle && r <= lay.r_min + tol) {
      fail(Errc::DegenerateGeometry, "a region interface meets the obstacle");
    }
    lay.interface_radii.push_back(r);
  }
  if (s.obstacle) {
    // The obstacle must be surrounded by a single region.
    std::optional<std::size_t> first;
    for (int k = 0; k < 256; ++k) {
      const auto reg = s.region_of(from_polar(lay.r_min * (1.0 + 1e-9) + tol, kTwoPi * (k + 0.5) / 256));
      if (!reg) fail(Errc::DegenerateGeometry, "obstacle boundary is not covered by a region");
      if (first && *first != *reg) fail(Errc::DegenerateGeometry, "obstacle touches a region interface");
      first = reg;
    }
  }
  if (!s.gamma_arc.is_full()) {
    angles.push_back(s.gamma_arc.begin);
    angles.push_back(s.gamma_arc.end);
  }
  lay.angles = unique_sorted_angles(std::move(angles));
  lay.radial_breaks.push_back(lay.r_min);
  for (double r : lay.interface_radii) lay.radial_breaks.push_back(r);
  for (double r : options.extra_radii) {
    if (r > lay.r_min + tol && r < lay.radius - tol) lay.radial_breaks.push_back(r);
  }
  lay.radial_breaks.push_back(lay.radius);
  std::sort(lay.radial_breaks.begin(), lay.radial_breaks.end());
  lay.radial_breaks.erase(std::unique(lay.radial_breaks.begin(), lay.radial_breaks.end(),
                                      [tol](double a, double b) { return b - a <= tol; }),
                          lay.radial_breaks.end());
  return lay;
}

Mesh mesh_disk(const Scenario& s, const DiskLayout& lay, double spacing, const MeshOptions& options) {
  std::vector<double> ring_radii;
  for (std::size_t b = 0; b + 1 < lay.radial_breaks.size(); ++b) {
    const double r0 = lay.radial_breaks[b], r1 = lay.radial_breaks[b + 1];
    const int layers = std::max(1, static_cast<int>(std::ceil((r1 - r0) / spacing - 1e-9)));
    for (int l = 0; l < layers; ++l) ring_radii.push_back(r0 + (r1 - r0) * l / layers);
  }
  ring_radii.push_back(lay.radius);

  const std::size_t nsec = lay.angles.size();
  auto sector_span = [&](std::size_t k) {
    const double a = lay.angles[k];
    const double b = k + 1 < nsec ? lay.angles[k + 1] : lay.angles.front() + kTwoPi;
    return std::pair{a, b};
  };
  auto in_gamma = [&](std::size_t k) {
    const auto [a, b] = sector_span(k);
    return s.gamma_arc.contains_strictly(0.5 * (a + b));
  };
  std::size_t gamma_sectors = 0;
  for (std::size_t k = 0; k < nsec; ++k) gamma_sectors += in_gamma(k) ? 1 : 0;

  std::vector<Point> vs;
  std::vector<Ring> rings;
  for (std::size_t ri = 0; ri < ring_radii.size(); ++ri) {
    Ring ring;
    ring.radius = ring_radii[ri];
    if (ring.radius <= 0.0) {
      ring.nodes.push_back(static_cast<int>(vs.size()));
      vs.push_back({0.0, 0.0});
      rings.push_back(std::move(ring));
      continue;
    }
    const bool outer = ri + 1 == ring_radii.size();
    for (std::size_t k = 0; k < nsec; ++k) {
      const auto [a, b] = sector_span(k);
      int m = static_cast<int>(std::ceil((b - a) * ring.radius / spacing - 1e-9));
      m = std::max(m, static_cast<int>(std::ceil(6.0 * (b - a) / kTwoPi - 1e-9)));
      m = std::max(m, 1);
      if (outer && !s.gamma_arc.is_full() && in_gamma(k)) {
        const int need = (options.min_gamma_edges + static_cast<int>(gamma_sectors) - 1) /
                         static_cast<int>(gamma_sectors);
        m = std::max(m, need);
      }
      ring.sector_start.push_back(ring.nodes.size());
      for (int i = 0; i < m; ++i) {
        ring.nodes.push_back(static_cast<int>(vs.size()));
        vs.push_back(from_polar(ring.radius, a + (b - a) * i / m));
      }
    }
    rings.push_back(std::move(ring));
  }

  std::vector<Triangle> tris;
  for (std::size_t ri = 0; ri + 1 < rings.size(); ++ri) {
    const Ring& in = rings[ri];
    const Ring& out = rings[ri + 1];
    for (std::size_t k = 0; k < nsec; ++k) {
      const auto outer_nodes = sector_nodes(out, k);
      if (in.nodes.size() == 1 && in.sector_start.empty()) {
        for (std::size_t i = 0; i + 1 < outer_nodes.size(); ++i) {
          Triangle t{{in.nodes[0], outer_nodes[i], outer_nodes[i + 1]}, 0};
          make_ccw(vs, t.v);
          tris.push_back(t);
        }
      } else {
        auto strip = zipper(vs, sector_nodes(in, k), outer_nodes);
        tris.insert(tris.end(), strip.begin(), strip.end());
      }
    }
  }

  std::vector<BoundaryEdge> edges;
  const Ring& outer = rings.back();
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    const int a = outer.nodes[i];
    const int b = outer.nodes[(i + 1) % outer.nodes.size()];
    const Point mid = 0.5 * (vs[a] + vs[b]);
    const BoundaryTag tag = s.gamma_arc.contains_strictly(polar_angle(mid))
                                ? BoundaryTag::GammaArc
                                : BoundaryTag::OuterRest;
    edges.push_back({{a, b}, tag});
  }
  if (lay.r_min > 0.0) {
    const Ring& hole = rings.front();
    for (std::size_t i = 0; i < hole.nodes.size(); ++i) {
      const int a = hole.nodes[i];
      const int b = hole.nodes[(i + 1) % hole.nodes.size()];
      edges.push_back({{b, a}, BoundaryTag::ObstacleBoundary});
    }
  }

  std::vector<Circle> circles{{{0.0, 0.0}, lay.radius}};
  if (lay.r_min > 0.0) circles.push_back({{0.0, 0.0}, lay.r_min});
  for (std::size_t b = 1; b + 1 < lay.radial_breaks.size(); ++b) circles.push_back({{0.0, 0.0}, lay.radial_breaks[b]});
  return Mesh(std::move(vs), std::move(tris), std::move(edges), std::move(circles));
}

std::vector<double> axis_nodes(std::vector<double> breaks, double spacing) {
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> out;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double a = breaks[b], c = breaks[b + 1];
    if (c - a <= 1e-12) continue;
    const int n = std::max(1, static_cast<int>(std::ceil((c - a) / spacing - 1e-9)));
    for (int i = 0; i < n; ++i) out.push_back(a + (c - a) * i / n);
  }
  out.push_back(breaks.back());
  return out;
}

Mesh mesh_rectangle(const Scenario& s, double spacing) {
  const auto& r = std::get<RectangleDomain>(s.domain);
  if (s.obstacle) fail(Errc::UnmeshableGeometry, "the tensor mesher does not support obstacles");
  std::vector<double> xb{r.xmin, r.xmax}, yb{r.ymin, r.ymax};
  for (const auto& reg : s.regions) {
    const auto* hp = std::get_if<HalfPlaneRegion>(&reg.shape);
    if (!hp) {
      if (const auto* b = std::get_if<BandRegion>(&reg.shape); b && b->r_in <= 0.0 && !std::isfinite(b->r_out)) {
        continue;  // whole-plane band
      }
      fail(Errc::UnmeshableGeometry, "rectangles support half-plane regions only");
    }
    auto& breaks = hp->axis == Axis::X ? xb : yb;
    const double lo = hp->axis == Axis::X ? r.xmin : r.ymin;
    const double hi = hp->axis == Axis::X ? r.xmax : r.ymax;
    if (hp->threshold > lo && hp->threshold < hi) breaks.push_back(hp->threshold);
  }
  const auto xs = axis_nodes(xb, spacing);
  const auto ys = axis_nodes(yb, spacing);
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  std::vector<Point> vs;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) vs.push_back({xs[i], ys[j]});
  }
  auto id = [nx](int i, int j) { return j * nx + i; };
  std::vector<Triangle> tris;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if ((i + j) % 2 == 0) {
        tris.push_back({{a, b, c}, 0});
        tris.push_back({{a, c, d}, 0});
      } else {
        tris.push_back({{a, b, d}, 0});
        tris.push_back({{b, c, d}, 0});
      }
    }
  }
  const Point centre = s.centre();
  std::vector<BoundaryEdge> edges;
  auto add = [&](int a, int b) {
    const Point mid = 0.5 * (vs[a] + vs[b]);
    const BoundaryTag tag = s.gamma_arc.contains_strictly(polar_angle(mid - centre))
                                ? BoundaryTag::GammaArc
                                : BoundaryTag::OuterRest;
    edges.push_back({{a, b}, tag});
  };
  for (int i = 0; i + 1 < nx; ++i) add(id(i, 0), id(i + 1, 0));
  for (int j = 0; j + 1 < ny; ++j) add(id(nx - 1, j), id(nx - 1, j + 1));
  for (int i = nx - 1; i > 0; --i) add(id(i, ny - 1), id(i - 1, ny - 1));
  for (int j = ny - 1; j > 0; --j) add(id(0, j), id(0, j - 1));
  return Mesh(std::move(vs), std::move(tris), std::move(edges), {});
}

Mesh tag_regions(const Scenario& s, const Mesh& raw, const MeshOptions& options) {
  std::vector<Triangle> tris = raw.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Point c = raw.centroid(t);
    const std::size_t n = s.region_count(c);
    if (n > 1) fail(Errc::InvalidScenario, "regions overlap");
    const auto reg = s.region_of(c);
    if (!reg) {
      std::ostringstream os;
      os << "triangle centroid (" << c.x << ", " << c.y << ") lies in no region";
      fail(Errc::TagMismatch, os.str());
    }
    tris[t].region = static_cast<int>(*reg);
  }
  if (options.require_distinct_neighbors) {
    std::map<std::pair<int, int>, int> owner;
    for (const auto& t : tris) {
      for (int k = 0; k < 3; ++k) {
        const int a = t.v[k], b = t.v[(k + 1) % 3];
        const auto key = a < b ? std::pair{a, b} : std::pair{b, a};
        auto [it, inserted] = owner.emplace(key, t.region);
        if (!inserted && it->second != t.region &&
            s.regions[it->second].conductivity == s.regions[t.region].conductivity) {
          fail(Errc::InvalidScenario, "adjacent regions share the same conductivity");
        }
      }
    }
  }
  return Mesh(raw.vertices(), std::move(tris), raw.boundary_edges(), raw.circles());
}

}  // namespace

std::vector<double> interface_radii(const Scenario& scenario) {
  if (!scenario.is_disk()) return {};
  return disk_layout(scenario, {}).interface_radii;
}

std::vector<double> interface_angles(const Scenario& scenario) {
  if (!scenario.is_disk()) return {};
  MeshOptions none;
  none.extra_angles = {};
  auto lay = disk_layout(scenario, none);
  return lay.angles;
}

MeshOptions pair_options(const Scenario& a, const Scenario& b) {
  MeshOptions opt;
  opt.extra_angles = {0.0};
  for (const auto* s : {&a, &b}) {
    for (double t : interface_angles(*s)) opt.extra_angles.push_back(t);
    for (double r : interface_radii(*s)) opt.extra_radii.push_back(r);
  }
  return opt;
}

Mesh build_mesh(const Scenario& scenario, double h, const MeshOptions& options) {
  if (!(h > 0.0) || !std::isfinite(h)) fail(Errc::InvalidArgument, "mesh size h must be positive");
  scenario.validate();

  std::optional<DiskLayout> layout;
  if (scenario.is_disk()) layout = disk_layout(scenario, options);

  // Start from spacing h / sqrt(2) and shrink until the diameter bound holds.
  double spacing = h / std::sqrt(2.0);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Mesh raw = layout ? mesh_disk(scenario, *layout, spacing, options) : mesh_rectangle(scenario, spacing);
    if (raw.h() <= h * (1.0 + 1e-12)) {
      Mesh mesh = tag_regions(scenario, raw, options);
      mesh.check_invariants();
      return mesh;
    }
    spacing *= 0.95;
  }
  fail(Errc::UnmeshableGeometry, "could not satisfy the requested mesh size");
}

}  // namespace eit
