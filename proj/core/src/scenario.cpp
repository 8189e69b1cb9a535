#include "eit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eit/error.hpp"

namespace eit {

namespace {

bool sector_contains(double begin, double end, double theta) {
  const double span = end - begin;
  if (span >= kTwoPi - 1e-14) return true;
  return wrap_angle(theta - begin) < span;
}

bool region_contains(const RegionShape& shape, Point p) {
  const double r = norm(p);
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BandRegion>) {
          return s.r_in <= r && r < s.r_out;
        } else if constexpr (std::is_same_v<T, SectorRegion>) {
          return s.r_in <= r && r < s.r_out &&
                 sector_contains(s.theta_begin, s.theta_end, polar_angle(p));
        } else {
          const double c = s.axis == Axis::X ? p.x : p.y;
          return s.lower ? c < s.threshold : c >= s.threshold;
        }
      },
      shape);
}

}  // namespace

bool ArcSpec::contains(double theta, double tol) const {
  if (is_full()) return true;
  const double t = wrap_angle(theta - begin);
  return t <= span() + tol || t >= kTwoPi - tol;
}

bool ArcSpec::contains_strictly(double theta, double tol) const {
  if (is_full()) return true;
  const double t = wrap_angle(theta - begin);
  return t > tol && t < span() - tol;
}

std::optional<std::size_t> Scenario::region_of(Point p) const {
  if (!in_solution_domain(p)) return std::nullopt;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (region_contains(regions[i].shape, p)) return i;
  }
  return std::nullopt;
}

std::size_t Scenario::region_count(Point p) const {
  std::size_t n = 0;
  for (const auto& reg : regions) n += region_contains(reg.shape, p) ? 1 : 0;
  return n;
}

bool Scenario::in_domain(Point p) const {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, DiskDomain>) {
          return norm(p) <= d.radius;
        } else {
          return p.x >= d.xmin && p.x <= d.xmax && p.y >= d.ymin && p.y <= d.ymax;
        }
      },
      domain);
}

bool Scenario::in_obstacle(Point p) const {
  return obstacle && distance(p, obstacle->center) < obstacle->radius;
}

double Scenario::min_conductivity() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : regions) m = std::min(m, r.conductivity);
  return m;
}

double Scenario::max_conductivity() const {
  double m = 0.0;
  for (const auto& r : regions) m = std::max(m, r.conductivity);
  return m;
}

double Scenario::ellipticity_constant() const {
  if (ellipticity) return *ellipticity;
  return std::min(min_conductivity(), 1.0 / max_conductivity());
}

Point Scenario::centre() const {
  if (const auto* r = std::get_if<RectangleDomain>(&domain)) {
    return {0.5 * (r->xmin + r->xmax), 0.5 * (r->ymin + r->ymax)};
  }
  return {0.0, 0.0};
}

Point Scenario::boundary_point(double angle) const {
  if (const auto* d = std::get_if<DiskDomain>(&domain)) {
    return from_polar(d->radius, angle);
  }
  const auto& r = std::get<RectangleDomain>(domain);
  const Point c = centre();
  const Point dir{std::cos(angle), std::sin(angle)};
  double t = std::numeric_limits<double>::infinity();
  if (dir.x > 0) t = std::min(t, (r.xmax - c.x) / dir.x);
  if (dir.x < 0) t = std::min(t, (r.xmin - c.x) / dir.x);
  if (dir.y > 0) t = std::min(t, (r.ymax - c.y) / dir.y);
  if (dir.y < 0) t = std::min(t, (r.ymin - c.y) / dir.y);
  return c + t * dir;
}

Point Scenario::outward_normal(Point q) const {
  if (is_disk()) {
    const double r = norm(q);
    return {q.x / r, q.y / r};
  }
  const auto& r = std::get<RectangleDomain>(domain);
  const double dl = std::abs(q.x - r.xmin), dr = std::abs(q.x - r.xmax);
  const double db = std::abs(q.y - r.ymin), dt = std::abs(q.y - r.ymax);
  const double m = std::min({dl, dr, db, dt});
  if (m == dr) return {1.0, 0.0};
  if (m == dl) return {-1.0, 0.0};
  if (m == dt) return {0.0, 1.0};
  return {0.0, -1.0};
}

double Scenario::distance_outside(Point p) const {
  if (const auto* d = std::get_if<DiskDomain>(&domain)) {
    return std::max(0.0, norm(p) - d->radius);
  }
  const auto& r = std::get<RectangleDomain>(domain);
  const double dx = std::max({r.xmin - p.x, 0.0, p.x - r.xmax});
  const double dy = std::max({r.ymin - p.y, 0.0, p.y - r.ymax});
  return std::hypot(dx, dy);
}

double Scenario::distance_to_boundary(Point p) const {
  if (const auto* d = std::get_if<DiskDomain>(&domain)) {
    return std::abs(d->radius - norm(p));
  }
  const auto& r = std::get<RectangleDomain>(domain);
  if (!in_domain(p)) return distance_outside(p);
  return std::min({p.x - r.xmin, r.xmax - p.x, p.y - r.ymin, r.ymax - p.y});
}

double Scenario::area() const {
  double a = std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, DiskDomain>) {
          return std::numbers::pi * d.radius * d.radius;
        } else {
          return (d.xmax - d.xmin) * (d.ymax - d.ymin);
        }
      },
      domain);
  if (obstacle) a -= std::numbers::pi * obstacle->radius * obstacle->radius;
  return a;
}

void Scenario::validate() const {
  auto bad = [](const std::string& msg) { fail(Errc::InvalidScenario, msg); };

  if (const auto* d = std::get_if<DiskDomain>(&domain)) {
    if (!(d->radius > 0.0)) bad("disk radius must be positive");
  } else {
    const auto& r = std::get<RectangleDomain>(domain);
    if (!(r.xmax > r.xmin && r.ymax > r.ymin)) bad("rectangle extents must be increasing");
  }
  if (regions.empty()) bad("at least one region is required");
  for (const auto& reg : regions) {
    if (!(reg.conductivity > 0.0) || !std::isfinite(reg.conductivity)) {
      bad("region conductivities must be positive and finite");
    }
  }
  const double c0 = ellipticity_constant();
  if (!(c0 > 0.0 && c0 <= 1.0)) bad("ellipticity constant must lie in (0, 1]");
  for (const auto& reg : regions) {
    if (reg.conductivity < c0 - 1e-14 || reg.conductivity > 1.0 / c0 + 1e-12) {
      std::ostringstream os;
      os << "conductivity " << reg.conductivity << " violates c0 = " << c0;
      bad(os.str());
    }
  }
  if (!(gamma_arc.span() > 0.0)) bad("gamma_arc must be a nonempty interval");

  if (obstacle) {
    if (!(obstacle->radius > 0.0)) bad("obstacle radius must be positive");
    // Closure strictly inside the domain.
    const double dist = distance_to_boundary(obstacle->center);
    if (!in_domain(obstacle->center) || dist <= obstacle->radius) {
      bad("obstacle closure must lie strictly inside the domain");
    }
  }
  if (const auto* imp = std::get_if<Impedance>(&obstacle_bc)) {
    if (imp->lambda.real() < 0.0) bad("impedance parameter needs Re(lambda) >= 0");
  }

  // Tiling: sample the solution domain on a polar/tensor lattice.
  const Point c = centre();
  double extent = 0.0;
  if (const auto* d = std::get_if<DiskDomain>(&domain)) {
    extent = d->radius;
  } else {
    const auto& r = std::get<RectangleDomain>(domain);
    extent = 0.5 * std::hypot(r.xmax - r.xmin, r.ymax - r.ymin);
  }
  constexpr int kRadial = 53;
  constexpr int kAngular = 97;
  for (int i = 0; i < kRadial; ++i) {
    const double rr = extent * (i + 0.37) / kRadial;
    for (int k = 0; k < kAngular; ++k) {
      const Point p = c + from_polar(rr, kTwoPi * (k + 0.21) / kAngular);
      if (!in_solution_domain(p)) continue;
      const std::size_t n = region_count(p);
      if (n != 1) {
        std::ostringstream os;
        os << "regions do not tile the domain: point (" << p.x << ", " << p.y << ") lies in "
           << n << " regions";
        bad(os.str());
      }
    }
  }
}

}  // namespace eit
