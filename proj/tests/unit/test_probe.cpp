#include <cmath>

#include <gtest/gtest.h>

#include "eit/error.hpp"
#include "eit/probe.hpp"
#include "scenarios.hpp"

using namespace eit;
using namespace eit::testing;

namespace {

Scenario layered(double c_in, double c_out) {
  Scenario s = two_layer(c_in, c_out, 0.6);
  s.gamma_arc = right_half();
  return s;
}

Scenario obstacle_template(double c_out) {
  Scenario s = two_layer(1.1, c_out, 0.6);
  s.obstacle = ObstacleSpec{{0.0, 0.0}, 0.3};
  s.gamma_arc = right_half();
  return s;
}

MeshOptions lax() {
  MeshOptions o;
  o.require_distinct_neighbors = false;
  return o;
}

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an eit::Error";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(FitSlope, LeastSquares) {
  EXPECT_NEAR(fit_slope({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0}), 2.0, 1e-14);
  EXPECT_NEAR(fit_slope({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}), 0.0, 1e-14);
  EXPECT_EQ(error_of([] { fit_slope({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}); }), Errc::InsufficientRange);
  EXPECT_EQ(error_of([] { fit_slope({1.0}, {1.0}); }), Errc::InsufficientRange);
}

TEST(SingularProbe, IdenticalScenariosMatch) {
  const Scenario a = layered(1.5, 1.0);
  const Mesh m = build_mesh(a, 0.05);
  const auto fam = make_family(a, 0.0, 0.5, 0.1, {4, 8, 12, 16});
  const auto r = run_singular_probe(a, a, m, fam);
  EXPECT_EQ(r.classification, Classification::Match);
  for (double d : r.relative_discrepancy) EXPECT_LE(d, 1e-8);
  EXPECT_EQ(r.j_values, fam.j_values);
  EXPECT_STREQ(to_string(r.classification), "Match");
}

TEST(SingularProbe, BoundaryContrastIsDetected) {
  const Scenario a = layered(1.5, 1.0);
  const Scenario b = layered(1.5, 2.0);
  const Mesh m = build_mesh(a, 0.05);
  const auto fam = make_family(a, 0.0, 0.5, 0.1, {4, 8, 12, 16});
  const auto r = run_singular_probe(a, b, m, fam);
  EXPECT_EQ(r.classification, Classification::Mismatch);
  for (std::size_t k = 1; k < r.discrepancy.size(); ++k) {
    EXPECT_GT(r.discrepancy[k], r.discrepancy[k - 1]);
    EXPECT_GT(r.window_h1[k], r.window_h1[k - 1]);
    EXPECT_GT(r.data_norms[k], r.data_norms[k - 1]);
  }
  EXPECT_GT(r.slope, r.tau);
}

TEST(SingularProbe, DropsUnresolvedSources) {
  const Scenario a = layered(1.5, 1.0);
  const Mesh m = build_mesh(a, 0.05);
  const auto fam = make_family(a, 0.0, 0.5, 0.1, {4, 6, 8, 10, 40});
  const auto r = run_singular_probe(a, a, m, fam);
  EXPECT_EQ(r.j_values, (std::vector<int>{4, 6, 8, 10}));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0].rfind("UnresolvedSource", 0), 0u);

  const auto few = make_family(a, 0.0, 0.5, 0.1, {4, 8, 40});
  EXPECT_EQ(error_of([&] { run_singular_probe(a, a, m, few); }), Errc::InsufficientRange);
}

TEST(SingularProbe, SeparateMeshesWithDifferentObstacles) {
  const Scenario a = obstacle_template(1.0);
  Scenario b = a;
  b.obstacle = ObstacleSpec{{0.0, 0.0}, 0.2};
  const auto opts = pair_options(a, b);
  const Mesh ma = build_mesh(a, 0.05, opts);
  const Mesh mb = build_mesh(b, 0.05, opts);
  const auto fam = make_family(a, 0.0, 0.5, 0.1, {4, 8, 12, 16});
  const auto same = run_singular_probe(a, ma, a, build_mesh(a, 0.05, opts), fam);
  EXPECT_EQ(same.classification, Classification::Match);
  const auto diff = run_singular_probe(a, ma, b, mb, fam);
  EXPECT_GT(diff.discrepancy.front(), 0.0);
}

TEST(LocalCoupled, IdenticalScenariosGiveEqualPair) {
  const Scenario a = layered(1.5, 1.0);
  const Mesh m = build_mesh(a, 0.05);
  const Field u = solve_forward(a, m, fourier_mode(m, 2));
  const auto local = build_local_coupled(a, a, m, ball_window({1.0, 0.0}, 0.3), u, u);
  EXPECT_EQ(local.u_a.values, local.u_b.values);
  EXPECT_EQ(local.problem.f1.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE(local.problem.f2.values.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LocalCoupled, SolutionReproducesRestrictions) {
  const Scenario a = layered(1.5, 1.0);
  const Scenario b = layered(1.5, 2.0);
  const Mesh m = build_mesh(a, 0.05);
  const auto f = fourier_mode(m, 1);
  const Field ua = solve_forward(a, m, f), ub = solve_forward(b, m, f);
  const auto local = build_local_coupled(a, b, m, ball_window({1.0, 0.0}, 0.3), ua, ub);
  EXPECT_EQ(local.problem.b1, 2.0);
  EXPECT_EQ(local.problem.b2, 1.0);
  const auto s = solve_coupled(local.problem);
  EXPECT_LT((s.u1.values - local.u_a.values).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((s.u2.values - local.u_b.values).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(LocalCoupled, RejectsWindowsAcrossInterfaces) {
  const Scenario a = layered(1.5, 1.0);
  const Mesh m = build_mesh(a, 0.05);
  const Field u = solve_forward(a, m, fourier_mode(m, 1));
  EXPECT_EQ(error_of([&] { build_local_coupled(a, a, m, ball_window({0.6, 0.0}, 0.2), u, u); }),
            Errc::WindowCrossesInterface);
  EXPECT_EQ(error_of([&] { build_local_coupled(a, a, m, ball_window({3.0, 0.0}, 0.2), u, u); }), Errc::EmptyWindow);
}

TEST(Recover, FindsHiddenConstantOnGrid) {
  const Mesh m = build_mesh(obstacle_template(1.0), 0.05, lax());
  const auto fam = make_family(obstacle_template(1.0), 0.0, 0.5, 0.1, {4, 8, 12, 16});
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  const auto measured = local_dtn_matrix(obstacle_template(1.5), m);
  const auto r = recover_boundary_constant(measured, obstacle_template(1.0), 1, grid, fam, m);
  EXPECT_EQ(r.c_hat, 1.5);
  ASSERT_EQ(r.table.size(), grid.size());
  EXPECT_TRUE(r.warnings.empty());

  // At the grid edge a coarse-grid warning is raised.
  const auto edge = recover_boundary_constant(local_dtn_matrix(obstacle_template(0.5), m), obstacle_template(1.0), 1,
                                              grid, fam, m);
  EXPECT_EQ(edge.c_hat, 0.5);
  ASSERT_FALSE(edge.warnings.empty());
  EXPECT_EQ(edge.warnings[0].rfind("GridTooCoarse", 0), 0u);
}

TEST(Recover, FromCauchyData) {
  const Mesh m = build_mesh(obstacle_template(1.0), 0.05, lax());
  std::vector<BoundaryTrace> traces;
  const auto fam = make_family(obstacle_template(1.0), 0.0, 0.5, 0.1, {4, 8, 12, 16});
  for (int j : fam.j_values) traces.push_back(singular_dirichlet_data(fam, j, obstacle_template(1.0), m));
  const auto data = cauchy_dataset(obstacle_template(2.0), m, traces);
  const auto r = recover_boundary_constant(data, obstacle_template(1.0), 1, {1.0, 1.5, 2.0, 2.5}, m);
  EXPECT_EQ(r.c_hat, 2.0);
}

TEST(Recover, RejectsForeignMesh) {
  const Mesh m = build_mesh(obstacle_template(1.0), 0.05, lax());
  const Mesh other = build_mesh(obstacle_template(1.0), 0.07, lax());
  const auto fam = make_family(obstacle_template(1.0), 0.0, 0.5, 0.1, {4, 8, 12, 16});
  const auto measured = local_dtn_matrix(obstacle_template(1.5), m);
  EXPECT_EQ(error_of([&] { recover_boundary_constant(measured, obstacle_template(1.0), 1, {1.0, 2.0}, fam, other); }),
            Errc::BoundaryMismatch);
}

TEST(InterfaceProbe, IdenticalScenariosMatch) {
  const Scenario a = layered(2.0, 1.0);
  const Mesh m = build_mesh(a, 0.05);
  const auto r = probe_interface_point(a, a, m, {0.0, 0.0}, {1.0, 0.0}, {3, 4, 5, 6}, 0.3);
  EXPECT_EQ(r.classification, Classification::Match);
  for (double d : r.discrepancy) EXPECT_EQ(d, 0.0);
  for (std::size_t k = 1; k < r.window_h1.size(); ++k) EXPECT_GT(r.window_h1[k], r.window_h1[k - 1]);
  EXPECT_EQ(error_of([&] { probe_interface_point(a, a, m, {0.0, 0.0}, {1.0, 0.0}, {3, 4, 5}, 0.3); }),
            Errc::InsufficientRange);
}
