#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace spindyn {

inline constexpr const char* kVersion = "0.1.0";

// Full-precision decimal form that round-trips through strtod.
inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Error taxonomy shared by the library and the command-line driver.
// The driver maps these onto process exit codes:
//   ConfigError   -> 2 (bad user input / schema violation)
//   GuardError    -> 3 (resource or numeric-stability guard tripped)
//   PipelineError -> 4 (a physics pipeline failed downstream of valid input)
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spindyn
