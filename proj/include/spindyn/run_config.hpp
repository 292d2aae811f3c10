#pragma once

#include <string>
#include <vector>

#include "spindyn/chain_config.hpp"
#include "spindyn/eswr.hpp"
#include "spindyn/spin_field.hpp"

namespace spindyn {

// One run of the command-line driver, as described by a flat `key = value`
// config file (see README for the schema). Comments start with `#`; unknown
// or duplicated keys are hard errors; every key has a documented default
// except `config_version` and `mode`.
struct RunConfig {
  int config_version = 1;
  std::string mode;  // verify-algebra | duality | exact | lattice | continuum
                     // | spectrum | raman-compare | sweep

  // chain.* plus drive.omega / drive.rabi
  ChainConfig chain;

  // grid.* (classical runs)
  int grid_points = 64;
  double grid_dz = 1.0;
  classical::FieldBoundary grid_boundary = classical::FieldBoundary::Pinned;

  // init.*: exact accepts all-down | all-up | tilt; classical runs accept
  // uniform-z | tilt. Empty resolves to the mode's default at parse time.
  std::string init_state;
  double init_tilt = 0.03;

  // numerics.*
  double dt = 0.01;
  long steps = 1000;
  long sample_every = 1;
  unsigned long long seed = 0;  // reserved; echoed for reproducibility

  // ringdown.* (raman-compare and sweep protocols)
  long ringdown_periods = 320;
  int ringdown_samples_per_period = 32;
  double ringdown_dt_fraction = 0.4;
  double ringdown_min_prominence = 0.025;

  // spectrum.*
  double spectrum_min_prominence = 0.05;

  // sweep.*
  std::string sweep_kind = "exchange";  // exchange | length
  std::vector<double> sweep_factors{0.5, 1.0, 2.0};
  std::vector<int> sweep_points{64, 128};

  // verify.*
  int verify_site = 2;
  std::string verify_component = "all";     // z | plus | minus | all
  std::string verify_form = "component";    // component | determinant

  // duality.*
  std::vector<double> duality_e{0.0, 0.0, 0.0};
  std::vector<double> duality_h{0.0, 0.0, 0.0};

  // raman.*
  bool raman_enabled = false;    // lattice/continuum: two-component system
  bool raman_cross_term = true;  // raman-compare: diagnostic switch

  // io.*
  std::string out;        // primary output (default depends on mode)
  std::string in;         // input trajectory (spectrum mode)
  std::string peaks_out;  // peak/fit report (spectrum mode)
  std::string emit = "text";  // stdout format for report modes: text | json

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

// Parses config-file text; applies defaults; validates (including the
// stability guard of the selected mode, so bad step sizes are rejected
// before any work starts).
RunConfig parse_config(const std::string& text);

// parse_config over the contents of `path`.
RunConfig load_config(const std::string& path);

// Canonical flat-file form of the effective config. parse_config on this
// text reproduces `config` exactly.
std::string emit_config(const RunConfig& config);

// The checks parse_config runs after defaulting; exposed for configs built
// in code (the flag-driven subcommands).
void validate_run_config(const RunConfig& config);

// Default io.out for the config's mode (used when io.out is empty).
std::string default_output_path(const RunConfig& config);

// The ring-down protocol settings carried by grid.*, init.tilt and
// ringdown.* (raman-compare and sweep modes).
spectra::RingdownParams ringdown_params(const RunConfig& config);

}  // namespace spindyn
