#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace meshsoc::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,       ///< unreadable input, I/O failure, numerical failure
  kUsageError = 2,         ///< unknown command, bad flag or flag value
  kInvariantViolation = 3, ///< a simulation broke one of its own invariants
};

/// Default output directory when --out is absent.
inline constexpr const char* kOutputDirEnv = "MESHSOC_OUTPUT_DIR";
inline constexpr const char* kManifestName = "manifest.json";

std::string_view tool_version() noexcept;

/// Written beside every run's outputs. `config` holds the resolved value of
/// every flag of the command, keyed by flag name, so passing the manifest
/// back through `replay` (or `--config`) reproduces the outputs.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string tool_version;
  std::vector<std::string> outputs;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

nlohmann::json to_json(const RunManifest& manifest);
/// Throws meshsoc::InvalidArgument when a required key is missing.
RunManifest manifest_from_json(const nlohmann::json& j);
RunManifest read_manifest(const std::filesystem::path& path);

/// `args` excludes the program name. Results go to files under the output
/// directory; `out` receives help text, `err` progress and diagnostics.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meshsoc::cli
