#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "eit/error.hpp"
#include "eit/mesh.hpp"
#include "scenarios.hpp"

using namespace eit;
using namespace eit::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an eit::Error";
  return Errc::InvalidArgument;
}

double arc_length(const Mesh& m, BoundaryTag tag) {
  double len = 0.0;
  for (const auto& e : m.boundary_edges()) {
    if (e.tag == tag) len += distance(m.vertices()[e.v[0]], m.vertices()[e.v[1]]);
  }
  return len;
}

// Random scenario from the supported family: concentric bands, optional
// sectors in the outer band, optional concentric obstacle.
Scenario random_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario s;
  const double r1 = 0.35 + 0.3 * u(rng);
  const double c_in = 0.5 + u(rng);
  s.regions.push_back({BandRegion{0.0, r1}, c_in});
  if (u(rng) < 0.5) {
    const double t = 2.0 * kPi * u(rng) * 0.5 + 0.3;
    s.regions.push_back({SectorRegion{0.0, t, r1}, c_in + 0.4});
    s.regions.push_back({SectorRegion{t, 2.0 * kPi, r1}, c_in + 0.8});
  } else {
    s.regions.push_back({BandRegion{r1}, c_in + 0.5});
  }
  if (u(rng) < 0.5) {
    s.obstacle = ObstacleSpec{{0.0, 0.0}, 0.1 + 0.15 * u(rng)};
    s.obstacle_bc = u(rng) < 0.5 ? ObstacleBC{SoundSoft{}} : ObstacleBC{Impedance{{u(rng), 0.0}}};
  }
  const double a = -kPi * u(rng);
  s.gamma_arc = {a, a + 0.8 + 2.0 * u(rng)};
  s.ellipticity = 0.3;
  return s;
}

void expect_aligned(const Scenario& s, const Mesh& m) {
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    const auto& tri = m.triangles()[t];
    const auto reg = s.region_of(m.centroid(t));
    ASSERT_TRUE(reg.has_value());
    EXPECT_EQ(static_cast<int>(*reg), tri.region);
    // Points strictly inside the triangle share its region.
    for (const auto& w : {std::array<double, 3>{0.6, 0.2, 0.2}, std::array<double, 3>{0.2, 0.6, 0.2},
                          std::array<double, 3>{0.2, 0.2, 0.6}}) {
      const Point p = w[0] * m.vertices()[tri.v[0]] + w[1] * m.vertices()[tri.v[1]] + w[2] * m.vertices()[tri.v[2]];
      const auto rp = s.region_of(p);
      ASSERT_TRUE(rp.has_value());
      EXPECT_EQ(static_cast<int>(*rp), tri.region);
    }
  }
}

}  // namespace

TEST(Scenario, ValidationCatchesBrokenInvariants) {
  Scenario s = two_layer(2.0, 1.0);
  EXPECT_NO_THROW(s.validate());

  Scenario gap = s;
  gap.regions[1].shape = BandRegion{0.7};
  EXPECT_EQ(error_of([&] { gap.validate(); }), Errc::InvalidScenario);

  Scenario bad_c = s;
  bad_c.regions[0].conductivity = -1.0;
  EXPECT_EQ(error_of([&] { bad_c.validate(); }), Errc::InvalidScenario);

  Scenario c0 = s;
  c0.ellipticity = 0.8;  // 2.0 > 1 / 0.8
  EXPECT_EQ(error_of([&] { c0.validate(); }), Errc::InvalidScenario);

  Scenario obstacle = s;
  obstacle.obstacle = ObstacleSpec{{0.0, 0.0}, 1.2};
  EXPECT_EQ(error_of([&] { obstacle.validate(); }), Errc::InvalidScenario);

  Scenario lambda = soft_annulus(0.5);
  lambda.obstacle_bc = Impedance{{-1.0, 0.0}};
  EXPECT_EQ(error_of([&] { lambda.validate(); }), Errc::InvalidScenario);
}

TEST(Scenario, HalfOpenRegionMembership) {
  const Scenario s = two_layer(2.0, 1.0, 0.6);
  EXPECT_EQ(s.region_of({0.6, 0.0}), std::optional<std::size_t>(1));
  EXPECT_EQ(s.region_of({0.5999999, 0.0}), std::optional<std::size_t>(0));
  EXPECT_FALSE(s.region_of({1.5, 0.0}).has_value());
  const Scenario a = soft_annulus(0.5);
  EXPECT_FALSE(a.in_solution_domain({0.2, 0.0}));
  EXPECT_TRUE(a.in_solution_domain({0.7, 0.0}));
}

TEST(BuildMesh, SingleRegionDisk) {
  const Scenario s = homogeneous_disk();
  const Mesh m = build_mesh(s, 0.2);
  EXPECT_NO_THROW(m.check_invariants());
  EXPECT_LE(m.h(), 0.2);
  for (const auto& t : m.triangles()) EXPECT_EQ(t.region, 0);
  for (const auto& e : m.boundary_edges()) {
    EXPECT_NE(e.tag, BoundaryTag::ObstacleBoundary);
    EXPECT_NEAR(norm(m.vertices()[e.v[0]]), 1.0, 1e-12);
  }
}

TEST(BuildMesh, AnnulusTagsSplit) {
  Scenario s = soft_annulus(0.5);
  s.gamma_arc = right_half();
  const Mesh m = build_mesh(s, 0.1);
  EXPECT_NO_THROW(m.check_invariants());
  std::map<BoundaryTag, int> counts;
  for (const auto& e : m.boundary_edges()) {
    ++counts[e.tag];
    const double r0 = norm(m.vertices()[e.v[0]]), r1 = norm(m.vertices()[e.v[1]]);
    if (e.tag == BoundaryTag::ObstacleBoundary) {
      EXPECT_NEAR(r0, 0.5, 1e-12);
      EXPECT_NEAR(r1, 0.5, 1e-12);
    } else {
      EXPECT_NEAR(r0, 1.0, 1e-12);
      EXPECT_NEAR(r1, 1.0, 1e-12);
    }
  }
  EXPECT_GT(counts[BoundaryTag::GammaArc], 0);
  EXPECT_GT(counts[BoundaryTag::OuterRest], 0);
  EXPECT_GT(counts[BoundaryTag::ObstacleBoundary], 0);
}

TEST(BuildMesh, TwoLayerInterfaceAlignment) {
  const Scenario s = two_layer(2.0, 1.0, 0.6);
  const Mesh m = build_mesh(s, 0.1);
  expect_aligned(s, m);
  // Interface vertices lie on the circle; chords deviate by at most h^2.
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    const auto& v = m.triangles()[t].v;
    for (int k = 0; k < 3; ++k) {
      const Point a = m.vertices()[v[k]], b = m.vertices()[v[(k + 1) % 3]];
      if (std::abs(norm(a) - 0.6) < 1e-12 && std::abs(norm(b) - 0.6) < 1e-12) {
        EXPECT_LE(0.6 - norm(0.5 * (a + b)), m.h() * m.h());
      }
    }
  }
}

TEST(BuildMesh, GammaArcLengthAndResolution) {
  Scenario s = homogeneous_disk();
  s.gamma_arc = {-0.3, 0.4};
  const Mesh m = build_mesh(s, 0.1);
  int gamma_edges = 0;
  for (const auto& e : m.boundary_edges()) gamma_edges += e.tag == BoundaryTag::GammaArc;
  EXPECT_GE(gamma_edges, 4);
  EXPECT_NEAR(arc_length(m, BoundaryTag::GammaArc), 0.7, 0.7 * m.h() * m.h());

  // A tiny arc still receives four edges.
  s.gamma_arc = {0.0, 0.05};
  const Mesh fine = build_mesh(s, 0.2);
  gamma_edges = 0;
  for (const auto& e : fine.boundary_edges()) gamma_edges += e.tag == BoundaryTag::GammaArc;
  EXPECT_GE(gamma_edges, 4);
}

TEST(BuildMesh, AreaConvergesQuadratically) {
  const Scenario s = soft_annulus(0.4);
  const double exact = kPi * (1.0 - 0.16);
  const Mesh coarse = build_mesh(s, 0.2);
  const Mesh fine = refine(coarse);
  const double e1 = std::abs(coarse.total_area() - exact);
  const double e2 = std::abs(fine.total_area() - exact);
  EXPECT_LT(e1, coarse.h() * coarse.h());
  EXPECT_LT(e2, 0.3 * e1);
}

TEST(BuildMesh, RectangleHalfPlanes) {
  Scenario s;
  s.domain = RectangleDomain{-1.0, 1.0, -0.5, 0.5};
  HalfPlaneRegion left{Axis::X, 0.2, true}, right{Axis::X, 0.2, false};
  s.regions = {{left, 1.0}, {right, 2.0}};
  s.gamma_arc = {-0.5, 0.5};
  const Mesh m = build_mesh(s, 0.1);
  EXPECT_NO_THROW(m.check_invariants());
  expect_aligned(s, m);
  EXPECT_NEAR(m.total_area(), 2.0, 1e-12);
}

TEST(BuildMesh, ErrorsForUnsupportedGeometry) {
  Scenario off = homogeneous_disk();
  off.obstacle = ObstacleSpec{{0.2, 0.0}, 0.2};
  EXPECT_EQ(error_of([&] { build_mesh(off, 0.1); }), Errc::UnmeshableGeometry);

  Scenario touching = homogeneous_disk();
  touching.regions = {{SectorRegion{0.0, kPi}, 1.0}, {SectorRegion{kPi, 2.0 * kPi}, 2.0}};
  touching.obstacle = ObstacleSpec{{0.0, 0.0}, 0.3};
  EXPECT_EQ(error_of([&] { build_mesh(touching, 0.1); }), Errc::DegenerateGeometry);

  Scenario same = two_layer(1.0, 1.0);
  EXPECT_EQ(error_of([&] { build_mesh(same, 0.1); }), Errc::InvalidScenario);
  MeshOptions lax;
  lax.require_distinct_neighbors = false;
  EXPECT_NO_THROW(build_mesh(same, 0.1, lax));

  EXPECT_EQ(error_of([&] { build_mesh(homogeneous_disk(), -1.0); }), Errc::InvalidArgument);
}

TEST(Refine, QuadruplesAndProjects) {
  const Scenario s = soft_annulus(0.5);
  const Mesh m0 = build_mesh(s, 0.2);
  const Mesh m1 = refine(m0);
  const Mesh m2 = refine(m1);
  EXPECT_EQ(m1.triangle_count(), 4 * m0.triangle_count());
  EXPECT_EQ(m2.triangle_count(), 16 * m0.triangle_count());
  EXPECT_NO_THROW(m2.check_invariants());
  for (const auto& e : m2.boundary_edges()) {
    const double r = e.tag == BoundaryTag::ObstacleBoundary ? 0.5 : 1.0;
    for (int v : e.v) EXPECT_NEAR(norm(m2.vertices()[v]) / r, 1.0, 1e-12);
  }
  EXPECT_LT(m1.h(), 0.6 * m0.h());
}

TEST(Refine, InheritsRegionTags) {
  const Scenario s = two_layer(2.0, 1.0, 0.6);
  const Mesh m = refine(build_mesh(s, 0.15));
  expect_aligned(s, m);
}

TEST(ConductivityField, FollowsRegions) {
  const Scenario s = two_layer(2.0, 1.0, 0.6);
  const Mesh m = build_mesh(s, 0.1);
  const auto g = conductivity_field(s, m);
  ASSERT_EQ(g.size(), m.triangle_count());
  for (std::size_t t = 0; t < g.size(); ++t) {
    EXPECT_EQ(g[t], norm(m.centroid(t)) < 0.6 ? 2.0 : 1.0);
  }
  const auto ones = conductivity_field(homogeneous_disk(), build_mesh(homogeneous_disk(), 0.2));
  for (double v : ones) EXPECT_EQ(v, 1.0);

  Scenario fewer = homogeneous_disk();
  EXPECT_EQ(error_of([&] { conductivity_field(fewer, m); }), Errc::TagMismatch);
}

TEST(Windows, SubmeshAndLocator) {
  const Scenario s = soft_annulus(0.3);
  const Mesh m = build_mesh(s, 0.1);
  const auto sub = extract_submesh(m, ball_window({1.0, 0.0}, 0.3));
  EXPECT_NO_THROW(sub.mesh.check_invariants());
  EXPECT_EQ(sub.parent_vertex.size(), sub.mesh.vertex_count());
  for (std::size_t v = 0; v < sub.parent_vertex.size(); ++v) {
    EXPECT_EQ(distance(sub.mesh.vertices()[v], m.vertices()[sub.parent_vertex[v]]), 0.0);
  }
  EXPECT_EQ(error_of([&] { extract_submesh(m, ball_window({5.0, 5.0}, 0.1)); }), Errc::EmptyWindow);

  const PointLocator loc(m);
  for (std::size_t t = 0; t < m.triangle_count(); t += 17) {
    const Point c = m.centroid(t);
    const auto found = loc.locate(c);
    ASSERT_TRUE(found.has_value());
    const auto lam = loc.barycentric(*found, c);
    EXPECT_NEAR(lam[0] + lam[1] + lam[2], 1.0, 1e-12);
  }
  EXPECT_FALSE(loc.locate({0.0, 0.0}).has_value());
  EXPECT_FALSE(loc.locate({2.0, 0.0}).has_value());
}

TEST(PairMeshes, MatchingOuterBoundary) {
  const Scenario a = two_layer(2.0, 1.0, 0.6);
  Scenario b = two_layer(1.5, 1.0, 0.4);
  b.obstacle = ObstacleSpec{{0.0, 0.0}, 0.2};
  const auto opts = pair_options(a, b);
  const Mesh ma = build_mesh(a, 0.1, opts);
  const Mesh mb = build_mesh(b, 0.1, opts);
  const auto map = match_outer_boundary(ma, mb);
  const auto mask = ma.outer_boundary_mask();
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) {
      ASSERT_GE(map[v], 0);
      EXPECT_LE(distance(ma.vertices()[v], mb.vertices()[map[v]]), 1e-10);
    } else {
      EXPECT_EQ(map[v], -1);
    }
  }
  const Mesh other = build_mesh(a, 0.07);
  EXPECT_EQ(error_of([&] { match_outer_boundary(ma, other); }), Errc::BoundaryMismatch);
}

// Property: random scenarios from the supported family mesh into valid,
// aligned triangulations whose Gamma arc is resolved.
TEST(BuildMeshProperty, RandomScenarios) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 25; ++trial) {
    const Scenario s = random_scenario(rng);
    ASSERT_NO_THROW(s.validate()) << "trial " << trial;
    const double h = 0.08 + 0.07 * (trial % 3);
    const Mesh m = build_mesh(s, h);
    EXPECT_NO_THROW(m.check_invariants());
    EXPECT_LE(m.h(), h);
    expect_aligned(s, m);
    int gamma_edges = 0;
    for (const auto& e : m.boundary_edges()) gamma_edges += e.tag == BoundaryTag::GammaArc;
    EXPECT_GE(gamma_edges, 4);
    EXPECT_NEAR(arc_length(m, BoundaryTag::GammaArc), s.gamma_arc.span(), 2.0 * m.h() * m.h() + 1e-12);
  }
}
