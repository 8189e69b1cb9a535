#include "eit/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "eit/error.hpp"

namespace eit {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void bad(const std::string& where, const std::string& msg) const {
    fail(Errc::Config, source_ + ": " + (where.empty() ? msg : where + ": " + msg));
  }

  void allow(const toml::table& t, const std::string& where, std::initializer_list<std::string_view> keys) const {
    const std::set<std::string_view> ok(keys);
    for (const auto& [k, v] : t) {
      if (!ok.count(k.str())) bad(where, "unknown key '" + std::string(k.str()) + "'");
    }
  }

  const toml::table* table(const toml::table& t, std::string_view key, const std::string& where,
                           bool required) const {
    const auto* node = t.get(key);
    if (!node) {
      if (required) bad(where, "missing table [" + std::string(key) + "]");
      return nullptr;
    }
    const auto* tab = node->as_table();
    if (!tab) bad(where, "'" + std::string(key) + "' must be a table");
    return tab;
  }

  std::optional<double> number(const toml::table& t, std::string_view key, const std::string& where) const {
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto v = node->value<double>()) {
      if (!std::isfinite(*v)) bad(where, "'" + std::string(key) + "' must be finite");
      return *v;
    }
    bad(where, "'" + std::string(key) + "' must be a number");
  }

  double number_or(const toml::table& t, std::string_view key, const std::string& where, double fallback) const {
    return number(t, key, where).value_or(fallback);
  }

  double required_number(const toml::table& t, std::string_view key, const std::string& where) const {
    const auto v = number(t, key, where);
    if (!v) bad(where, "missing key '" + std::string(key) + "'");
    return *v;
  }

  std::optional<std::string> string(const toml::table& t, std::string_view key, const std::string& where) const {
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto v = node->value<std::string>()) return *v;
    bad(where, "'" + std::string(key) + "' must be a string");
  }

  std::optional<bool> boolean(const toml::table& t, std::string_view key, const std::string& where) const {
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (const auto* b = node->as_boolean()) return b->get();
    bad(where, "'" + std::string(key) + "' must be a boolean");
  }

  std::optional<std::vector<double>> numbers(const toml::table& t, std::string_view key, const std::string& where,
                                             std::size_t expected = 0) const {
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    const auto* arr = node->as_array();
    if (!arr) bad(where, "'" + std::string(key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : *arr) {
      const auto v = e.value<double>();
      if (!v || !std::isfinite(*v)) bad(where, "'" + std::string(key) + "' must be an array of numbers");
      out.push_back(*v);
    }
    if (expected && out.size() != expected) {
      bad(where, "'" + std::string(key) + "' must have " + std::to_string(expected) + " entries");
    }
    return out;
  }

 private:
  std::string source_;
};

DomainShape parse_domain(const Reader& r, const toml::table& t, Scenario& s) {
  const std::string where = "[domain]";
  r.allow(t, where, {"shape", "radius", "xmin", "xmax", "ymin", "ymax", "c0"});
  s.ellipticity = r.number(t, "c0", where);
  const auto shape = r.string(t, "shape", where).value_or("disk");
  if (shape == "disk") {
    for (auto k : {"xmin", "xmax", "ymin", "ymax"}) {
      if (t.contains(k)) r.bad(where, std::string("'") + k + "' applies to rectangles only");
    }
    return DiskDomain{r.number_or(t, "radius", where, 1.0)};
  }
  if (shape == "rectangle") {
    if (t.contains("radius")) r.bad(where, "'radius' applies to disks only");
    return RectangleDomain{r.required_number(t, "xmin", where), r.required_number(t, "xmax", where),
                           r.required_number(t, "ymin", where), r.required_number(t, "ymax", where)};
  }
  r.bad(where, "shape must be \"disk\" or \"rectangle\"");
}

RegionSpec parse_region(const Reader& r, const toml::table& t, const std::string& where, bool& unknown) {
  const auto kind = r.string(t, "kind", where);
  if (!kind) r.bad(where, "missing key 'kind'");
  unknown = r.boolean(t, "unknown", where).value_or(false);
  RegionSpec spec;
  spec.conductivity = r.required_number(t, "c", where);
  const double inf = std::numeric_limits<double>::infinity();
  if (*kind == "band") {
    r.allow(t, where, {"kind", "c", "unknown", "r_in", "r_out"});
    spec.shape = BandRegion{r.number_or(t, "r_in", where, 0.0), r.number_or(t, "r_out", where, inf)};
  } else if (*kind == "sector") {
    r.allow(t, where, {"kind", "c", "unknown", "r_in", "r_out", "theta0", "theta1"});
    spec.shape = SectorRegion{r.required_number(t, "theta0", where), r.required_number(t, "theta1", where),
                              r.number_or(t, "r_in", where, 0.0), r.number_or(t, "r_out", where, inf)};
  } else if (*kind == "halfplane") {
    r.allow(t, where, {"kind", "c", "unknown", "axis", "threshold", "side"});
    HalfPlaneRegion hp;
    const auto axis = r.string(t, "axis", where).value_or("x");
    if (axis == "x") {
      hp.axis = Axis::X;
    } else if (axis == "y") {
      hp.axis = Axis::Y;
    } else {
      r.bad(where, "axis must be \"x\" or \"y\"");
    }
    hp.threshold = r.required_number(t, "threshold", where);
    const auto side = r.string(t, "side", where).value_or("lower");
    if (side != "lower" && side != "upper") r.bad(where, "side must be \"lower\" or \"upper\"");
    hp.lower = side == "lower";
    spec.shape = hp;
  } else {
    r.bad(where, "kind must be \"band\", \"sector\" or \"halfplane\"");
  }
  return spec;
}

void parse_obstacle(const Reader& r, const toml::table& t, Scenario& s) {
  const std::string where = "[obstacle]";
  r.allow(t, where, {"center", "radius", "bc", "lambda"});
  const auto center = r.numbers(t, "center", where, 2).value_or(std::vector<double>{0.0, 0.0});
  s.obstacle = ObstacleSpec{{center[0], center[1]}, r.required_number(t, "radius", where)};
  const auto bc = r.string(t, "bc", where).value_or("sound_soft");
  if (bc == "sound_soft") {
    if (t.contains("lambda")) r.bad(where, "'lambda' applies to impedance obstacles only");
    s.obstacle_bc = SoundSoft{};
  } else if (bc == "impedance") {
    const auto lam = r.numbers(t, "lambda", where, 2).value_or(std::vector<double>{0.0, 0.0});
    s.obstacle_bc = Impedance{{lam[0], lam[1]}};
  } else {
    r.bad(where, "bc must be \"sound_soft\" or \"impedance\"");
  }
}

ArcSpec parse_measurement(const Reader& r, const toml::table& t) {
  const std::string where = "[measurement]";
  r.allow(t, where, {"gamma_arc"});
  const auto* node = t.get("gamma_arc");
  if (!node) r.bad(where, "missing key 'gamma_arc'");
  if (auto s = node->value<std::string>()) {
    if (*s != "full") r.bad(where, "gamma_arc must be \"full\" or [begin, end]");
    return ArcSpec::full();
  }
  const auto v = r.numbers(t, "gamma_arc", where, 2);
  if (!(v->at(1) > v->at(0))) r.bad(where, "gamma_arc must satisfy begin < end");
  return {v->at(0), v->at(1)};
}

MeshConfig parse_mesh(const Reader& r, const toml::table* t) {
  MeshConfig m;
  if (!t) return m;
  const std::string where = "[mesh]";
  r.allow(*t, where, {"h", "refine"});
  m.h = r.number_or(*t, "h", where, m.h);
  if (!(m.h > 0.0)) r.bad(where, "h must be positive");
  if (const auto* node = t->get("refine")) {
    const auto v = node->value<std::int64_t>();
    if (!v || *v < 0 || *v > 6) r.bad(where, "refine must be an integer in [0, 6]");
    m.refine = static_cast<int>(*v);
  }
  return m;
}

ProbeConfig parse_probe(const Reader& r, const toml::table* t) {
  ProbeConfig p;
  if (!t) return p;
  const std::string where = "[probe]";
  r.allow(*t, where, {"x_star_angle", "delta", "eps", "j_values", "tau"});
  p.x_star_angle = r.number_or(*t, "x_star_angle", where, p.x_star_angle);
  p.delta = r.number_or(*t, "delta", where, p.delta);
  p.eps = r.number_or(*t, "eps", where, p.eps);
  p.tau = r.number_or(*t, "tau", where, p.tau);
  if (!(p.tau >= 0.0)) r.bad(where, "tau must be non-negative");
  if (const auto* node = t->get("j_values")) {
    const auto* arr = node->as_array();
    if (!arr) r.bad(where, "j_values must be an array of positive integers");
    p.j_values.clear();
    for (const auto& e : *arr) {
      const auto v = e.value<std::int64_t>();
      if (!v || *v < 1) r.bad(where, "j_values must be an array of positive integers");
      p.j_values.push_back(static_cast<int>(*v));
    }
  }
  return p;
}

Scenario parse_scenario_body(const Reader& r, const toml::table& t, const std::string& prefix,
                             std::optional<std::size_t>* unknown_region) {
  Scenario s;
  if (const auto* d = r.table(t, "domain", prefix, false)) s.domain = parse_domain(r, *d, s);

  const auto* regions = t.get("regions");
  if (!regions) r.bad(prefix, "missing [[regions]]");
  const auto* arr = regions->as_array();
  if (!arr || arr->empty()) r.bad(prefix, "[[regions]] must be a non-empty array of tables");
  for (std::size_t k = 0; k < arr->size(); ++k) {
    const auto* rt = (*arr)[k].as_table();
    const std::string where = prefix + "[[regions]] #" + std::to_string(k + 1);
    if (!rt) r.bad(where, "must be a table");
    bool unknown = false;
    s.regions.push_back(parse_region(r, *rt, where, unknown));
    if (unknown) {
      if (!unknown_region) r.bad(where, "'unknown' is only valid in template scenarios");
      if (unknown_region->has_value()) r.bad(where, "only one region may be unknown");
      *unknown_region = k;
    }
  }
  if (const auto* o = r.table(t, "obstacle", prefix, false)) parse_obstacle(r, *o, s);
  const auto* m = r.table(t, "measurement", prefix, true);
  s.gamma_arc = parse_measurement(r, *m);
  s.validate();
  return s;
}

toml::table parse_toml(std::string_view text, std::string_view source) {
  try {
    return toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    fail(Errc::Config, os.str());
  }
}

}  // namespace

ScenarioConfig parse_scenario_config(std::string_view text, std::string_view source) {
  const toml::table t = parse_toml(text, source);
  const Reader r{std::string(source)};
  r.allow(t, "", {"domain", "regions", "obstacle", "measurement", "mesh", "probe"});
  ScenarioConfig out;
  out.scenario = parse_scenario_body(r, t, "", &out.unknown_region);
  out.mesh = parse_mesh(r, r.table(t, "mesh", "", false));
  out.probe = parse_probe(r, r.table(t, "probe", "", false));
  return out;
}

PairConfig parse_pair_config(std::string_view text, std::string_view source) {
  const toml::table t = parse_toml(text, source);
  const Reader r{std::string(source)};
  r.allow(t, "", {"scenario_a", "scenario_b", "mesh", "probe"});
  PairConfig out;
  for (auto [key, target] : {std::pair{"scenario_a", &out.a}, std::pair{"scenario_b", &out.b}}) {
    const auto* sub = r.table(t, key, "", true);
    const std::string prefix = std::string("[") + key + "]";
    r.allow(*sub, prefix, {"domain", "regions", "obstacle", "measurement"});
    *target = parse_scenario_body(r, *sub, prefix, nullptr);
  }
  out.mesh = parse_mesh(r, r.table(t, "mesh", "", false));
  out.probe = parse_probe(r, r.table(t, "probe", "", false));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  return parse_scenario_config(read_file(path), path.string());
}

PairConfig load_pair_config(const std::filesystem::path& path) {
  return parse_pair_config(read_file(path), path.string());
}

std::vector<double> parse_grid(std::string_view spec) {
  auto to_double = [&](std::string_view s) {
    const std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != str.size() || str.empty() || !std::isfinite(v)) {
      fail(Errc::InvalidArgument, "malformed grid '" + std::string(spec) + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    const auto a = spec.find(':');
    const auto b = spec.find(':', a + 1);
    if (b == std::string_view::npos || spec.find(':', b + 1) != std::string_view::npos) {
      fail(Errc::InvalidArgument, "grid must be lo:hi:step");
    }
    const double lo = to_double(spec.substr(0, a));
    const double hi = to_double(spec.substr(a + 1, b - a - 1));
    const double step = to_double(spec.substr(b + 1));
    if (!(step > 0.0) || hi < lo) fail(Errc::InvalidArgument, "grid needs lo <= hi and step > 0");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (n > 100000) fail(Errc::InvalidArgument, "grid is too large");
    // Snap to the nearest multiple of 1e-12 so decimal steps print cleanly.
    for (long k = 0; k <= n; ++k) out.push_back(std::round((lo + k * step) * 1e12) / 1e12);
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto next = spec.find(',', pos);
      const auto piece = spec.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
      out.push_back(to_double(piece));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  }
  return out;
}

}  // namespace eit
