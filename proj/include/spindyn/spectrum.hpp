#pragma once

#include <utility>
#include <vector>

#include "spindyn/trajectory.hpp"

namespace spindyn::spectra {

// One-sided discrete spectrum of a complex ring-down signal.
// freqs[m] = m * resolution covers [0, 2*pi/dt); amps[m] = |X_m| / M where
// X is the length-M discrete Fourier transform of the signal.
struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> amps;
  double resolution = 0.0;  // 2*pi / (M * dt), the bin spacing
};

// Transforms the site-summed transverse moment s(t) = sum_k w_k (sx_k + i sy_k).
// An empty weight vector means uniform unit weights; otherwise one weight per
// series is required.  Sample times must be uniformly spaced.  Because the
// signal is complex the positive- and negative-frequency halves are
// independent; a rotating transverse moment produces a single line without a
// mirror image.
Spectrum ringdown_spectrum(const Trajectory& trajectory,
                           const std::vector<double>& weights = {});

struct Peak {
  double omega = 0.0;      // refined line position, rad / time
  double amplitude = 0.0;  // amplitude of the hosting bin
};

// Strict local maxima with amplitude >= min_prominence * max(amps), refined to
// sub-bin accuracy with the two-sided ratio estimator: for a rectangular
// window the larger shoulder bin a_s of a peak bin a_0 satisfies
// delta = a_s / (a_0 + a_s) where delta is the signed offset of the true line
// from the bin centre (exact for an isolated tone up to O(1/M^2)).
// min_prominence must lie in (0, 1).  A flat spectrum yields an empty list.
std::vector<Peak> detect_peaks(const Spectrum& spectrum, double min_prominence);

// Least-squares fit of peak positions to the standing-wave mode law
// omega_n = omega0 + C * n^2.
struct ModeFit {
  double omega0_fit = 0.0;
  double c = 0.0;
  double residual = 0.0;  // RMS misfit / (omega_max - omega_min)
  bool odd_only = false;  // whether n = 1,3,5,... (else n = 1,2,3,...)
  std::vector<std::pair<int, double>> modes;  // (n, omega_n) as assigned
};

// Tries both index assignments (odd-only and consecutive) and keeps the lower
// residual.  Requires at least three peaks; peaks are used in ascending
// frequency order.
ModeFit fit_mode_law(const std::vector<Peak>& peaks);

}  // namespace spindyn::spectra
