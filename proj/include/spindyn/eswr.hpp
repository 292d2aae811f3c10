#pragma once

#include <vector>

#include "spindyn/chain_config.hpp"
#include "spindyn/spectrum.hpp"
#include "spindyn/trajectory.hpp"

namespace spindyn::spectra {

// Standing-wave resonance measurement: kick a pinned continuum chain with a
// small uniform tilt, let it ring down with the drive off, and read the mode
// constant C from the spectrum of the net transverse moment.
//
// A uniform tilt between pinned ends excites the odd standing modes
// sin(n pi z / L) with kick amplitude 4*tilt/(n pi); the site-summed signal
// therefore carries them with weight ~ 1/n^2, and min_prominence selects how
// many enter the fit (the default keeps n = 1, 3, 5).
struct RingdownParams {
  int points = 64;              // grid points including the two pinned ends
  double dz = 1.0;              // grid spacing
  double tilt = 0.03;           // kick angle of the interior spins, radians
  long periods = 320;           // window length in level-splitting periods
  int samples_per_period = 32;  // spectral sampling density
  double dt_fraction = 0.4;     // integrator step as a fraction of the guard limit
  double min_prominence = 0.025;

  void validate() const;
};

struct EswrRun {
  Trajectory trajectory;  // the sampled ring-down (window samples only)
  Spectrum spectrum;
  std::vector<Peak> peaks;
  ModeFit fit;
  double c_theory = 0.0;  // 2 a^2 J (pi/L)^2 with L = (points - 1) * dz
};

// Runs the single-component protocol. The drive is turned off regardless of
// config.rabi; config.omega0 must be positive (it sets the window length).
EswrRun run_eswr(const ChainConfig& config, const RingdownParams& params);

// Two-component comparison: the same kick applied to both components of the
// coupled two-transition system, C fitted from the second component's
// spectrum. With the cross term on the exchange contribution doubles
// (ratio ~ 2); with it off the components decouple (ratio ~ 1).
struct RamanComparison {
  double c_single = 0.0;
  double c_raman = 0.0;
  double ratio = 0.0;
  double residual_single = 0.0;
  double residual_raman = 0.0;
  bool cross_term = true;
};

RamanComparison raman_doubling(const ChainConfig& config,
                               const RingdownParams& params,
                               bool cross_term = true);

// Repeats the measurement with the exchange constant scaled by each factor
// (or the grid resized to each point count) and reports fitted vs predicted C.
struct SweepPoint {
  double parameter = 0.0;  // exchange constant, or chain length L
  double c_fit = 0.0;
  double c_theory = 0.0;
  double residual = 0.0;
};

std::vector<SweepPoint> sweep_exchange(const ChainConfig& config,
                                       const RingdownParams& params,
                                       const std::vector<double>& factors);
std::vector<SweepPoint> sweep_length(const ChainConfig& config,
                                     const RingdownParams& params,
                                     const std::vector<int>& points_list);

}  // namespace spindyn::spectra
