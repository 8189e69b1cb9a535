#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <memory>
#include <sstream>

#include "eit/config.hpp"
#include "eit/coupled.hpp"
#include "eit/dtn.hpp"
#include "eit/error.hpp"
#include "eit/greens.hpp"
#include "eit/oracle.hpp"
#include "eit/probe.hpp"
#include "eit/serialize.hpp"

namespace eit::cli {

namespace {

class Stopwatch {
 public:
  Stopwatch(Context& ctx, std::string name)
      : ctx_(ctx), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    ctx_.manifest.timings[name_] +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Context& ctx_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

void emit(Context& ctx, const std::string& path, const std::string& contents) {
  write_file_atomic(path, contents);
  ctx.manifest.outputs.push_back(path);
}

void default_manifest(Context& ctx, const std::string& out, const std::string& command) {
  if (!ctx.manifest_path.empty()) return;
  ctx.manifest_path = out.empty() ? "eit_" + command + ".manifest.json" : out + ".manifest.json";
}

Mesh mesh_for(const Scenario& s, const MeshConfig& cfg, const MeshOptions& options = {}) {
  Mesh m = build_mesh(s, cfg.h, options);
  for (int k = 0; k < cfg.refine; ++k) m = refine(m);
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) fail(Errc::InvalidArgument, "point must be given as x,y");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(Errc::InvalidArgument, "point must be given as x,y");
  }
}

/// Mesh geometry ignores conductivities and the obstacle condition.
bool same_geometry(Scenario a, Scenario b) {
  for (auto* s : {&a, &b}) {
    for (auto& r : s->regions) r.conductivity = 1.0;
    s->ellipticity.reset();
    s->obstacle_bc = SoundSoft{};
  }
  return canonical_json(a) == canonical_json(b);
}

SingularFamily family_for(const Scenario& s, const ProbeConfig& p) {
  return make_family(s, p.x_star_angle, p.delta, p.eps, p.j_values);
}

void add_mesh(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("mesh", "Build the interface-aligned mesh of a scenario and export it as VTK");
  auto config = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--config", *config, "Scenario TOML")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Output .vtk")->required();
  cmd->callback([&ctx, config, out] {
    default_manifest(ctx, *out, "mesh");
    ctx.manifest.add_input(*config);
    const auto cfg = load_scenario_config(*config);
    Mesh mesh;
    {
      Stopwatch sw(ctx, "mesh");
      mesh = mesh_for(cfg.scenario, cfg.mesh);
    }
    emit(ctx, *out, to_vtk(mesh));
    ctx.manifest.results["vertices"] = std::to_string(mesh.vertex_count());
    ctx.manifest.results["triangles"] = std::to_string(mesh.triangle_count());
    ctx.manifest.results["h"] = fmt(mesh.h());
    std::cout << "vertices " << mesh.vertex_count() << "\ntriangles " << mesh.triangle_count() << "\nh " << fmt(mesh.h())
              << '\n';
  });
}

void add_solve(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("solve", "Solve the forward problem with Fourier-mode Dirichlet data");
  auto config = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto csv = std::make_shared<std::string>();
  auto mode = std::make_shared<int>(1);
  auto sine = std::make_shared<bool>(false);
  cmd->add_option("--config", *config, "Scenario TOML")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Output .vtk with the solution")->required();
  cmd->add_option("--csv", *csv, "Optional CSV of boundary trace and weak flux");
  cmd->add_option("--mode", *mode, "Fourier mode n of the boundary data")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--sine", *sine, "Use sin(n theta) instead of cos(n theta)");
  cmd->callback([&ctx, config, out, csv, mode, sine] {
    default_manifest(ctx, *out, "solve");
    ctx.manifest.add_input(*config);
    const auto cfg = load_scenario_config(*config);
    const Mesh mesh = mesh_for(cfg.scenario, cfg.mesh);
    const auto f = fourier_mode(mesh, *mode, *sine);
    Field u;
    BoundaryFunctional flux;
    {
      Stopwatch sw(ctx, "solve");
      const ForwardSolver solver(cfg.scenario, mesh);
      u = solver.solve(f);
      flux = solver.weak_flux(u);
    }
    emit(ctx, *out, to_vtk(mesh, {{"u", &u}}));
    if (!csv->empty()) {
      CsvTable table({"vertex", "x", "y", "theta", "f", "flux_re", "flux_im"});
      for (int v : mesh.boundary_vertices({BoundaryTag::GammaArc, BoundaryTag::OuterRest})) {
        const Point p = mesh.vertices()[v];
        table.add_row(std::vector<double>{double(v), p.x, p.y, polar_angle(p - cfg.scenario.centre()),
                                          f.values[v].real(), flux.values[v].real(), flux.values[v].imag()});
      }
      emit(ctx, *csv, table.str());
    }
    const double pairing = mode_pairing(mesh, f, flux);
    ctx.manifest.results["mode_pairing"] = fmt(pairing);
    std::cout << "vertices " << mesh.vertex_count() << "\nmode_pairing " << fmt(pairing) << '\n';
  });
}

void add_dtn(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("dtn", "Local D-N matrix on the measurement arc, as JSON");
  auto config = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--config", *config, "Scenario TOML")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Output .json")->required();
  cmd->callback([&ctx, config, out] {
    default_manifest(ctx, *out, "dtn");
    ctx.manifest.add_input(*config);
    const auto cfg = load_scenario_config(*config);
    const Mesh mesh = mesh_for(cfg.scenario, cfg.mesh);
    DtnMatrix m;
    {
      Stopwatch sw(ctx, "dtn");
      m = local_dtn_matrix(cfg.scenario, mesh);
    }
    emit(ctx, *out, to_json(m));
    const double defect = symmetry_defect(m.matrix);
    ctx.manifest.results["size"] = std::to_string(m.vertices.size());
    ctx.manifest.results["symmetry_defect"] = fmt(defect);
    std::cout << "size " << m.vertices.size() << "\nsymmetry_defect " << fmt(defect) << '\n';
  });
}

void add_cauchy(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("cauchy", "Cauchy data (trace, flux) pairs on the measurement arc, as JSON");
  auto config = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto fourier = std::make_shared<int>(0);
  cmd->add_option("--config", *config, "Scenario TOML")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Output .json")->required();
  cmd->add_option("--fourier", *fourier,
                  "Use cos/sin modes 1..N restricted to the arc instead of the singular family of [probe]")
      ->check(CLI::NonNegativeNumber);
  cmd->callback([&ctx, config, out, fourier] {
    default_manifest(ctx, *out, "cauchy");
    ctx.manifest.add_input(*config);
    const auto cfg = load_scenario_config(*config);
    const Mesh mesh = mesh_for(cfg.scenario, cfg.mesh);
    std::vector<BoundaryTrace> traces;
    if (*fourier > 0) {
      for (int n = 1; n <= *fourier; ++n) {
        traces.push_back(fourier_mode(mesh, n, false));
        traces.push_back(fourier_mode(mesh, n, true));
      }
    } else {
      const auto fam = family_for(cfg.scenario, cfg.probe);
      for (int j : resolvable_j(cfg.scenario, fam, mesh.h())) {
        traces.push_back(singular_dirichlet_data(fam, j, cfg.scenario, mesh));
      }
    }
    CauchyDataset d;
    {
      Stopwatch sw(ctx, "cauchy");
      d = cauchy_dataset(cfg.scenario, mesh, traces);
    }
    emit(ctx, *out, to_json(d));
    ctx.manifest.results["pairs"] = std::to_string(d.pairs.size());
    std::cout << "pairs " << d.pairs.size() << "\nvertices " << d.vertices.size() << '\n';
  });
}

void add_probe(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("probe", "Singular boundary probe comparing two scenarios");
  auto config = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--config", *config, "Pair TOML with [scenario_a] and [scenario_b]")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", *out, "Output .csv")->required();
  cmd->callback([&ctx, config, out] {
    default_manifest(ctx, *out, "probe");
    ctx.manifest.add_input(*config);
    const auto cfg = load_pair_config(*config);
    const auto options = pair_options(cfg.a, cfg.b);
    const auto fam = family_for(cfg.a, cfg.probe);
    ProbeResult r;
    {
      Stopwatch sw(ctx, "probe");
      const Mesh mesh_a = mesh_for(cfg.a, cfg.mesh, options);
      if (same_geometry(cfg.a, cfg.b)) {
        r = run_singular_probe(cfg.a, cfg.b, mesh_a, fam, cfg.probe.tau);
      } else {
        const Mesh mesh_b = mesh_for(cfg.b, cfg.mesh, options);
        r = run_singular_probe(cfg.a, mesh_a, cfg.b, mesh_b, fam, cfg.probe.tau);
      }
    }
    CsvTable table({"j", "f_norm", "window_h1", "away_h1", "away_l2", "d_j", "relative_d_j"});
    for (std::size_t k = 0; k < r.j_values.size(); ++k) {
      table.add_row(std::vector<double>{double(r.j_values[k]), r.data_norms[k], r.window_h1[k], r.away_h1[k],
                                        r.away_l2[k], r.discrepancy[k], r.relative_discrepancy[k]});
    }
    emit(ctx, *out, table.str());
    ctx.manifest.results["slope"] = fmt(r.slope);
    ctx.manifest.results["tau"] = fmt(r.tau);
    ctx.manifest.results["classification"] = to_string(r.classification);
    ctx.manifest.warnings.insert(ctx.manifest.warnings.end(), r.warnings.begin(), r.warnings.end());
    std::cout << "slope " << fmt(r.slope) << "\ntau " << fmt(r.tau) << "\nclassification "
              << to_string(r.classification) << '\n';
  });
}

void add_recover(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("recover", "Recover the unknown boundary-adjacent conductivity on a grid");
  auto measured = std::make_shared<std::string>();
  auto templ = std::make_shared<std::string>();
  auto grid = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--measured", *measured, "D-N matrix or Cauchy dataset JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--template", *templ, "Scenario TOML with one region marked unknown = true")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--grid", *grid, "Trial values as lo:hi:step or a comma list")->required();
  cmd->add_option("--out", *out, "Output .csv of the score table")->required();
  cmd->callback([&ctx, measured, templ, grid, out] {
    default_manifest(ctx, *out, "recover");
    ctx.manifest.add_input(*measured);
    ctx.manifest.add_input(*templ);
    const auto cfg = load_scenario_config(*templ);
    if (!cfg.unknown_region) fail(Errc::Config, *templ + ": no region is marked unknown = true");
    const auto values = parse_grid(*grid);
    MeshOptions options;
    options.require_distinct_neighbors = false;
    const Mesh mesh = mesh_for(cfg.scenario, cfg.mesh, options);
    const std::string text = read_file(*measured);
    const std::string kind = json_kind(text);
    RecoverResult r;
    {
      Stopwatch sw(ctx, "recover");
      if (kind == "dtn_matrix") {
        r = recover_boundary_constant(dtn_matrix_from_json(text), cfg.scenario, *cfg.unknown_region, values,
                                      family_for(cfg.scenario, cfg.probe), mesh);
      } else if (kind == "cauchy_dataset") {
        r = recover_boundary_constant(cauchy_dataset_from_json(text), cfg.scenario, *cfg.unknown_region, values,
                                      mesh);
      } else {
        fail(Errc::Io, *measured + ": unsupported document kind '" + kind + "'");
      }
    }
    std::vector<std::string> columns{"c", "slope"};
    const std::size_t levels = r.table.front().discrepancy.size();
    for (std::size_t k = 0; k < levels; ++k) columns.push_back("d_" + std::to_string(k + 1));
    CsvTable table(columns);
    for (const auto& row : r.table) {
      std::vector<double> cells{row.c, row.slope};
      cells.insert(cells.end(), row.discrepancy.begin(), row.discrepancy.end());
      table.add_row(cells);
    }
    emit(ctx, *out, table.str());
    ctx.manifest.results["c_hat"] = fmt(r.c_hat);
    ctx.manifest.warnings.insert(ctx.manifest.warnings.end(), r.warnings.begin(), r.warnings.end());
    std::cout << "c_hat " << fmt(r.c_hat) << '\n';
    for (const auto& w : r.warnings) std::cout << "warning " << w << '\n';
  });
}

void add_coupled(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("coupled", "Solve the coupled system on a disk with a manufactured solution");
  auto p = std::make_shared<FormCoefficients>();
  auto h = std::make_shared<double>(0.02);
  p->radius = 0.3;
  auto out = std::make_shared<std::string>();
  cmd->add_option("--radius", p->radius, "Disk radius")->check(CLI::PositiveNumber);
  cmd->add_option("--mesh-size", *h, "Mesh size")->check(CLI::PositiveNumber);
  cmd->add_option("--a1", p->a1, "Coefficient a1")->check(CLI::PositiveNumber);
  cmd->add_option("--a2", p->a2, "Coefficient a2")->check(CLI::PositiveNumber);
  cmd->add_option("--b1", p->b1, "Coefficient b1")->check(CLI::PositiveNumber);
  cmd->add_option("--b2", p->b2, "Coefficient b2")->check(CLI::PositiveNumber);
  cmd->add_option("--out", *out, "Optional .vtk with u1 and u2");
  cmd->callback([&ctx, p, h, out] {
    default_manifest(ctx, *out, "coupled");
    Scenario disk;
    disk.domain = DiskDomain{p->radius};
    disk.regions = {{BandRegion{}, 1.0}};
    const Mesh mesh = build_mesh(disk, *h);
    const auto c = *p;
    // u1 = x^2, u2 = x y.
    auto problem = CoupledProblem::homogeneous(mesh, c.a1, c.a2, c.b1, c.b2);
    problem.rho1 = interpolate(mesh, [&](Point x) { return Complex(2.0 * c.a1 - c.b1 * x.x * x.x); });
    problem.rho2 = interpolate(mesh, [&](Point x) { return Complex(-c.b2 * x.x * x.y); });
    for (int v : mesh.boundary_vertices()) {
      const Point x = mesh.vertices()[v];
      problem.f1.values[v] = x.x * x.x - x.x * x.y;
    }
    problem.f2 = boundary_functional(mesh, {BoundaryTag::GammaArc, BoundaryTag::OuterRest}, [&](Point x, Point n) {
      return Complex(2.0 * c.a1 * x.x * n.x - c.a2 * (x.y * n.x + x.x * n.y));
    });
    CoupledSolution s;
    {
      Stopwatch sw(ctx, "coupled");
      s = solve_coupled(problem);
    }
    const auto e1 = error_norms(
        s.u1, [](Point x, int) { return Complex(x.x * x.x); },
        [](Point x, int) { return std::array<Complex, 2>{2.0 * x.x, 0.0}; });
    const auto e2 = error_norms(
        s.u2, [](Point x, int) { return Complex(x.x * x.y); },
        [](Point x, int) { return std::array<Complex, 2>{x.y, x.x}; });
    const double ratio = stability_ratio(problem, s);
    if (!out->empty()) emit(ctx, *out, to_vtk(mesh, {{"u1", &s.u1}, {"u2", &s.u2}}));
    const auto report = check_coercivity(problem);
    ctx.manifest.results["h1_error_u1"] = fmt(e1.h1);
    ctx.manifest.results["h1_error_u2"] = fmt(e2.h1);
    ctx.manifest.results["stability_ratio"] = fmt(ratio);
    ctx.manifest.results["condition_estimate"] = fmt(s.condition_estimate);
    ctx.manifest.results["feasible"] = report.feasible ? "true" : "false";
    ctx.manifest.warnings.insert(ctx.manifest.warnings.end(), s.warnings.begin(), s.warnings.end());
    std::cout << "vertices " << mesh.vertex_count() << "\nfeasible " << (report.feasible ? "true" : "false")
              << "\nh1_error_u1 " << fmt(e1.h1) << "\nh1_error_u2 " << fmt(e2.h1) << "\nl2_error_u1 " << fmt(e1.l2)
              << "\nl2_error_u2 " << fmt(e2.l2) << "\nstability_ratio " << fmt(ratio) << "\nrelative_residual "
              << fmt(s.relative_residual) << '\n';
    for (const auto& w : s.warnings) std::cout << "warning " << w << '\n';
  });
}

void add_coercivity(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("coercivity", "Feasibility and constants of the coupled-form coercivity estimate");
  auto ratio = std::make_shared<double>(2.0);
  auto b1 = std::make_shared<double>(2.0);
  auto b2 = std::make_shared<double>(1.0);
  auto c0 = std::make_shared<double>(1.0);
  cmd->add_option("--a-ratio", *ratio, "inf a1/a2")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--b1", *b1, "b1")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--b2", *b2, "b2")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--c0", *c0, "Ellipticity constant")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->callback([&ctx, ratio, b1, b2, c0] {
    default_manifest(ctx, "", "coercivity");
    const auto r = check_coercivity(*ratio, *b1, *b2, *c0);
    std::cout << (r.feasible ? "feasible" : "infeasible") << '\n';
    std::cout << "threshold " << fmt(r.threshold) << '\n';
    if (r.epsilon0) std::cout << "epsilon0 " << fmt(*r.epsilon0) << '\n';
    std::cout << "c3 " << fmt(r.c3) << "\nc4 " << fmt(r.c4) << "\nc5 " << fmt(r.c5) << '\n';
    ctx.manifest.results["feasible"] = r.feasible ? "true" : "false";
    if (r.epsilon0) ctx.manifest.results["epsilon0"] = fmt(*r.epsilon0);
    ctx.manifest.results["c5"] = fmt(r.c5);
  });
}

void add_oracle(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("oracle", "Closed-form reference values");
  auto kase = std::make_shared<std::string>("annulus");
  auto n = std::make_shared<int>(1);
  auto r0 = std::make_shared<double>(0.5);
  auto bc = std::make_shared<std::string>("sound_soft");
  auto gamma = std::make_shared<double>(1.0);
  auto gin = std::make_shared<double>(2.0);
  auto gout = std::make_shared<double>(1.0);
  auto x = std::make_shared<std::string>("0,0");
  auto y = std::make_shared<std::string>("0.5,0");
  auto samples = std::make_shared<int>(11);
  cmd->add_option("--case", *kase, "annulus, two_layer or disk_green")
      ->check(CLI::IsMember({"annulus", "two_layer", "disk_green"}));
  cmd->add_option("--n", *n, "Mode number")->check(CLI::NonNegativeNumber);
  cmd->add_option("--r0", *r0, "Hole or interface radius");
  cmd->add_option("--bc", *bc, "sound_soft or neumann (annulus)")->check(CLI::IsMember({"sound_soft", "neumann"}));
  cmd->add_option("--gamma", *gamma, "Conductivity (annulus, disk_green)");
  cmd->add_option("--gamma-in", *gin, "Inner conductivity (two_layer)");
  cmd->add_option("--gamma-out", *gout, "Outer conductivity (two_layer)");
  cmd->add_option("--x", *x, "Evaluation point x1,x2 (disk_green)");
  cmd->add_option("--y", *y, "Source point y1,y2 (disk_green)");
  cmd->add_option("--samples", *samples, "Radial profile samples (annulus)")->check(CLI::Range(2, 100000));
  cmd->callback([&ctx, kase, n, r0, bc, gamma, gin, gout, x, y, samples] {
    default_manifest(ctx, "", "oracle");
    if (*kase == "annulus") {
      const auto m = annulus_mode(*n, *r0, *bc == "neumann" ? AnnulusBc::Neumann : AnnulusBc::SoundSoft, *gamma);
      std::cout << "kappa " << fmt(m.kappa) << "\n";
      CsvTable table({"r", "u"});
      for (int k = 0; k < *samples; ++k) {
        const double r = *r0 + (1.0 - *r0) * k / (*samples - 1);
        table.add_row(std::vector<double>{r, m.profile.value(r)});
      }
      std::cout << table.str();
      ctx.manifest.results["kappa"] = fmt(m.kappa);
    } else if (*kase == "two_layer") {
      const double k = two_layer_mode(*n, *r0, *gin, *gout);
      std::cout << "kappa " << fmt(k) << '\n';
      ctx.manifest.results["kappa"] = fmt(k);
    } else {
      const double g = disk_green(parse_point(*x), parse_point(*y), *gamma);
      std::cout << "G " << fmt(g) << '\n';
      ctx.manifest.results["G"] = fmt(g);
    }
  });
}

void add_green(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("green", "Dirichlet Green function samples around a source (K-bound table)");
  auto config = std::make_shared<std::string>();
  auto source = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto at = std::make_shared<std::string>();
  cmd->add_option("--config", *config, "Scenario TOML")->required()->check(CLI::ExistingFile);
  cmd->add_option("--source", *source, "Source point y1,y2")->required();
  cmd->add_option("--out", *out, "Output .csv with x, y, G, Phi2, ratio on rings 3h..6h")->required();
  cmd->add_option("--at", *at, "Also print G at this point x1,x2");
  cmd->callback([&ctx, config, source, out, at] {
    default_manifest(ctx, *out, "green");
    ctx.manifest.add_input(*config);
    const auto cfg = load_scenario_config(*config);
    const Mesh mesh = mesh_for(cfg.scenario, cfg.mesh);
    const Point y = parse_point(*source);
    std::vector<KernelSample> samples;
    Complex value;
    {
      Stopwatch sw(ctx, "green");
      const auto g = dirichlet_green(cfg.scenario, mesh, y);
      samples = kernel_ratio_samples(g, 3.0 * mesh.h(), 6.0 * mesh.h());
      if (!at->empty()) value = g(parse_point(*at), PointLocator(mesh));
    }
    CsvTable table({"x1", "x2", "y1", "y2", "G", "Phi2", "ratio"});
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& s : samples) {
      table.add_row(std::vector<double>{s.x.x, s.x.y, s.y.x, s.y.y, s.green, s.phi, s.ratio});
      lo = std::min(lo, s.ratio);
      hi = std::max(hi, s.ratio);
    }
    emit(ctx, *out, table.str());
    std::cout << "samples " << samples.size() << "\nratio_min " << fmt(lo) << "\nratio_max " << fmt(hi) << '\n';
    if (!at->empty()) {
      std::cout << "G " << fmt(value.real()) << '\n';
      ctx.manifest.results["G"] = fmt(value.real());
    }
    ctx.manifest.results["ratio_min"] = fmt(lo);
    ctx.manifest.results["ratio_max"] = fmt(hi);
  });
}

}  // namespace

void register_commands(CLI::App& app, Context& ctx) {
  add_mesh(app, ctx);
  add_solve(app, ctx);
  add_dtn(app, ctx);
  add_cauchy(app, ctx);
  add_probe(app, ctx);
  add_recover(app, ctx);
  add_coupled(app, ctx);
  add_coercivity(app, ctx);
  add_oracle(app, ctx);
  add_green(app, ctx);
}

}  // namespace eit::cli
