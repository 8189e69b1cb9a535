#include <iostream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "eit/error.hpp"

namespace {

int exit_code(eit::ErrorCategory c) {
  switch (c) {
    case eit::ErrorCategory::Usage: return 1;
    case eit::ErrorCategory::Config: return 2;
    case eit::ErrorCategory::Geometry: return 3;
    case eit::ErrorCategory::Solver: return 4;
    case eit::ErrorCategory::Io: return 5;
  }
  return 5;
}

const char* category_name(eit::ErrorCategory c) {
  switch (c) {
    case eit::ErrorCategory::Usage: return "usage";
    case eit::ErrorCategory::Config: return "config";
    case eit::ErrorCategory::Geometry: return "geometry";
    case eit::ErrorCategory::Solver: return "solver";
    case eit::ErrorCategory::Io: return "io";
  }
  return "io";
}

void report(std::string_view code, std::string_view category, std::string_view message, int exit) {
  const nlohmann::json j{{"error", code}, {"category", category}, {"message", message}, {"exit_code", exit}};
  std::cerr << j.dump() << '\n';
}

void write_manifest(eit::cli::Context& ctx, int code) {
  if (ctx.manifest_path.empty()) return;
  ctx.manifest.exit_code = code;
  try {
    eit::write_file_atomic(ctx.manifest_path, ctx.manifest.to_json());
  } catch (const eit::Error& e) {
    std::cerr << "warning: manifest not written: " << e.what() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward, D-N and probing tools for piecewise-constant conductivity problems", "eit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", eit::library_version());
  eit::cli::Context ctx;
  app.add_option("--manifest", ctx.manifest_path, "Run-manifest path (default: <out>.manifest.json)");
  eit::cli::register_commands(app, ctx);

  for (int k = 1; k < argc; ++k) ctx.manifest.arguments.emplace_back(argv[k]);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("UsageError", "usage", e.what(), 1);
    return 1;
  } catch (const eit::Error& e) {
    const auto cat = eit::category(e.code());
    const int code = exit_code(cat);
    report(eit::to_string(e.code()), category_name(cat), e.what(), code);
    write_manifest(ctx, code);
    return code;
  } catch (const std::exception& e) {
    report("InternalError", "io", e.what(), 5);
    write_manifest(ctx, 5);
    return 5;
  }
  if (!app.get_subcommands().empty()) ctx.manifest.command = app.get_subcommands().front()->get_name();
  write_manifest(ctx, 0);
  return 0;
}
