#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eit/fem.hpp"

namespace eit {

/// Writes through a sibling temporary file and renames it into place.
/// Throws Error(Io).
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Plain CSV with a header row; doubles printed with 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

/// Legacy ASCII VTK unstructured grid with the region tag as cell data and
/// the real and imaginary parts of each field as point data.
std::string to_vtk(const Mesh& mesh, const std::vector<std::pair<std::string, const Field*>>& fields = {});

/// Run manifest: command, inputs with content hashes, outputs, timings.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::map<std::string, std::string> inputs;   // path -> FNV-1a of contents
  std::vector<std::string> outputs;
  std::map<std::string, double> timings;       // seconds
  std::map<std::string, std::string> results;  // short summary values
  std::vector<std::string> warnings;
  int exit_code = 0;

  void add_input(const std::filesystem::path& path);
  std::string to_json() const;
};

std::string library_version();

}  // namespace eit
