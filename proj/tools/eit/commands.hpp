#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eit/export.hpp"

namespace eit::cli {

/// Shared state of one invocation; commands fill the manifest as they go.
struct Context {
  RunManifest manifest;
  std::string manifest_path;
};

/// Registers every subcommand on `app`. Each callback runs the command and
/// records its outputs in ctx.manifest.
void register_commands(CLI::App& app, Context& ctx);

}  // namespace eit::cli
