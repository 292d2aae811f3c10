#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spindyn/run_config.hpp"

namespace spindyn {

struct RunManifest {
  std::string version;
  std::string mode;
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, checksum)
  double wall_time_ms = 0.0;
  std::string manifest_path;
  std::string summary;  // human-readable result for stdout
};

// Dispatches the configured pipeline, writes its data outputs, then writes
// `<io.out>.manifest.json` (config echo, toolkit version, wall time, FNV-1a
// checksums of every output) last. Data outputs are byte-deterministic for
// identical configs; the manifest's wall-time field is the one documented
// exception. Sweep points run on a small worker pool capped by the
// SPINDYN_MAX_WORKERS environment variable.
RunManifest run(const RunConfig& config);

// FNV-1a 64-bit checksum of the file's bytes, as 16 hex digits.
std::string checksum_file(const std::string& path);

// CSV with header "omega,amplitude", full double precision.
void write_spectrum_csv(const spectra::Spectrum& spectrum,
                        const std::string& path);

}  // namespace spindyn
