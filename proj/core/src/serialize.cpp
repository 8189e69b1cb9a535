#include "eit/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "eit/dtn.hpp"
#include "eit/error.hpp"

namespace eit {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(Errc::Io, "complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

Vector vector_from(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from(j[i]);
  return v;
}

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(json::array({p.x, p.y}));
  return out;
}

std::vector<Point> points_from(const json& j) {
  std::vector<Point> pts;
  for (const auto& p : j) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return pts;
}

json arc_json(const ArcSpec& a) { return json{{"begin", a.begin}, {"end", a.end}}; }

ArcSpec arc_from(const json& j) { return {j.at("begin").get<double>(), j.at("end").get<double>()}; }

json region_json(const RegionSpec& r) {
  json out;
  out["c"] = r.conductivity;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        auto radius = [](double v) { return std::isfinite(v) ? json(v) : json("inf"); };
        if constexpr (std::is_same_v<T, BandRegion>) {
          out["kind"] = "band";
          out["r_in"] = s.r_in;
          out["r_out"] = radius(s.r_out);
        } else if constexpr (std::is_same_v<T, SectorRegion>) {
          out["kind"] = "sector";
          out["theta0"] = s.theta_begin;
          out["theta1"] = s.theta_end;
          out["r_in"] = s.r_in;
          out["r_out"] = radius(s.r_out);
        } else {
          out["kind"] = "halfplane";
          out["axis"] = s.axis == Axis::X ? "x" : "y";
          out["threshold"] = s.threshold;
          out["side"] = s.lower ? "lower" : "upper";
        }
      },
      r.shape);
  return out;
}

json scenario_json(const Scenario& s) {
  json out;
  if (const auto* d = std::get_if<DiskDomain>(&s.domain)) {
    out["domain"] = {{"shape", "disk"}, {"radius", d->radius}};
  } else {
    const auto& r = std::get<RectangleDomain>(s.domain);
    out["domain"] = {{"shape", "rectangle"}, {"xmin", r.xmin}, {"xmax", r.xmax}, {"ymin", r.ymin}, {"ymax", r.ymax}};
  }
  out["regions"] = json::array();
  for (const auto& r : s.regions) out["regions"].push_back(region_json(r));
  if (s.obstacle) {
    out["obstacle"] = {{"center", {s.obstacle->center.x, s.obstacle->center.y}}, {"radius", s.obstacle->radius}};
    if (const auto* imp = std::get_if<Impedance>(&s.obstacle_bc)) {
      out["bc"] = {{"type", "impedance"}, {"lambda", complex_json(imp->lambda)}};
    } else {
      out["bc"] = {{"type", "sound_soft"}};
    }
  }
  out["gamma_arc"] = arc_json(s.gamma_arc);
  out["c0"] = s.ellipticity_constant();
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::Io, std::string("invalid JSON: ") + e.what());
  }
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(Errc::Io, std::string("malformed dataset: ") + e.what());
  }
}

}  // namespace

std::string canonical_json(const Scenario& scenario) { return scenario_json(scenario).dump(); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string scenario_hash(const Scenario& scenario) { return fnv1a_hex(canonical_json(scenario)); }

std::string to_json(const DtnMatrix& m) {
  json out;
  out["kind"] = "dtn_matrix";
  out["vertices"] = m.vertices;
  out["points"] = points_json(m.points);
  out["gamma_arc"] = arc_json(m.gamma);
  out["scenario_hash"] = m.scenario_hash;
  out["h"] = m.h;
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) rows.push_back(vector_json(m.matrix.row(i).transpose()));
  out["matrix"] = std::move(rows);
  return out.dump(1) + "\n";
}

std::string to_json(const CauchyDataset& d) {
  json out;
  out["kind"] = "cauchy_dataset";
  out["vertices"] = d.vertices;
  out["points"] = points_json(d.points);
  out["gamma_arc"] = arc_json(d.gamma);
  out["scenario_hash"] = d.scenario_hash;
  out["h"] = d.h;
  json pairs = json::array();
  for (const auto& p : d.pairs) pairs.push_back({{"trace", vector_json(p.trace)}, {"flux", vector_json(p.flux)}});
  out["pairs"] = std::move(pairs);
  return out.dump(1) + "\n";
}

std::string json_kind(std::string_view text) {
  const json j = parse(text);
  return guarded([&] { return j.at("kind").get<std::string>(); });
}

DtnMatrix dtn_matrix_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    if (j.at("kind") != "dtn_matrix") fail(Errc::Io, "document is not a D-N matrix");
    DtnMatrix m;
    m.vertices = j.at("vertices").get<std::vector<int>>();
    m.points = points_from(j.at("points"));
    m.gamma = arc_from(j.at("gamma_arc"));
    m.scenario_hash = j.at("scenario_hash").get<std::string>();
    m.h = j.at("h").get<double>();
    const auto& rows = j.at("matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n != static_cast<Eigen::Index>(m.vertices.size()) || m.points.size() != m.vertices.size()) {
      fail(Errc::Io, "matrix size differs from vertex count");
    }
    m.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vector row = vector_from(rows[static_cast<std::size_t>(i)]);
      if (row.size() != n) fail(Errc::Io, "matrix rows must be square");
      m.matrix.row(i) = row.transpose();
    }
    return m;
  });
}

CauchyDataset cauchy_dataset_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    if (j.at("kind") != "cauchy_dataset") fail(Errc::Io, "document is not a Cauchy dataset");
    CauchyDataset d;
    d.vertices = j.at("vertices").get<std::vector<int>>();
    d.points = points_from(j.at("points"));
    d.gamma = arc_from(j.at("gamma_arc"));
    d.scenario_hash = j.at("scenario_hash").get<std::string>();
    d.h = j.at("h").get<double>();
    for (const auto& p : j.at("pairs")) {
      CauchyPair pair{vector_from(p.at("trace")), vector_from(p.at("flux"))};
      if (pair.trace.size() != static_cast<Eigen::Index>(d.vertices.size()) || pair.flux.size() != pair.trace.size()) {
        fail(Errc::Io, "Cauchy pair length differs from vertex count");
      }
      d.pairs.push_back(std::move(pair));
    }
    if (d.pairs.empty()) fail(Errc::Io, "Cauchy dataset holds no pairs");
    return d;
  });
}

}  // namespace eit
