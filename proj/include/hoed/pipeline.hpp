#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hoed/config.hpp"

namespace hoed {

inline constexpr const char* kToolName = "hoed";
inline constexpr const char* kToolVersion = "1.0.0";

struct BundleFile {
  std::string path;  ///< relative to the bundle directory, '/' separated
  std::string sha256;
  std::uint64_t bytes = 0;
};

struct StageRecord {
  std::string name;
  std::string status;  ///< "ok", "partial", "failed", "skipped" or "disabled"
  std::string message;
};

struct DiagnosticsBundle {
  std::string directory;
  std::string config_hash;
  std::string input_digest;
  int selected_window = 0;
  std::vector<BundleFile> files;
  std::vector<StageRecord> stages;
};

struct RunOptions {
  int jobs = 1;
  /// ISO-8601 UTC clock; replaceable so tests can pin timestamps.
  std::function<std::string()> clock;
};

/// Runs every stage and writes the bundle plus manifest.json into config.output_directory
/// (resolved against the config's base directory). Fatal stages (ingest, windows, elasticity) throw an
/// Error whose message names the stage; other stage failures are recorded in the manifest.
DiagnosticsBundle run_pipeline(const RunConfig& config, const RunOptions& options = {});

/// Loads the panel a config refers to (file or generator), with regions assigned and logs taken.
/// `input_bytes` receives the exact bytes that were digested.
Panel load_config_panel(const RunConfig& config, std::string* input_bytes = nullptr);

std::string utc_timestamp();

}  // namespace hoed
