#include "eit/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eit/config.hpp"
#include "eit/error.hpp"
#include "eit/serialize.hpp"

namespace eit {

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(Errc::Io, "output directory does not exist: " + dir.string());
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      fail(Errc::Io, "write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(Errc::Io, "cannot move output into place: " + path.string());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) fail(Errc::InvalidArgument, "CSV row width differs from the header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
    os << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

std::string to_vtk(const Mesh& mesh, const std::vector<std::pair<std::string, const Field*>>& fields) {
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\neit mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.vertex_count() << " double\n";
  for (const auto& p : mesh.vertices()) os << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
  os << "CELLS " << mesh.triangle_count() << ' ' << 4 * mesh.triangle_count() << '\n';
  for (const auto& t : mesh.triangles()) os << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
  os << "CELL_TYPES " << mesh.triangle_count() << '\n';
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) os << "5\n";
  os << "CELL_DATA " << mesh.triangle_count() << "\nSCALARS region int 1\nLOOKUP_TABLE default\n";
  for (const auto& t : mesh.triangles()) os << t.region << '\n';
  if (!fields.empty()) {
    os << "POINT_DATA " << mesh.vertex_count() << '\n';
    for (const auto& [name, f] : fields) {
      if (!f || f->values.size() != static_cast<Eigen::Index>(mesh.vertex_count())) {
        fail(Errc::InvalidArgument, "field '" + name + "' does not match the mesh");
      }
      for (int part = 0; part < 2; ++part) {
        os << "SCALARS " << name << (part ? "_imag" : "_real") << " double 1\nLOOKUP_TABLE default\n";
        for (Eigen::Index v = 0; v < f->values.size(); ++v) {
          os << format_double(part ? f->values[v].imag() : f->values[v].real()) << '\n';
        }
      }
    }
  }
  return os.str();
}

void RunManifest::add_input(const std::filesystem::path& path) { inputs[path.string()] = fnv1a_hex(read_file(path)); }

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["arguments"] = arguments;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["timings_s"] = timings;
  j["results"] = results;
  j["warnings"] = warnings;
  j["exit_code"] = exit_code;
  j["version"] = {{"eit", library_version()},
                  {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                std::to_string(EIGEN_MINOR_VERSION)}};
  return j.dump(2) + "\n";
}

std::string library_version() { return "0.1.0"; }

}  // namespace eit
