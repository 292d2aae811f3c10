#include "spindyn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/FFT>

#include "spindyn/common.hpp"

namespace spindyn::spectra {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

Spectrum ringdown_spectrum(const Trajectory& trajectory,
                           const std::vector<double>& weights) {
  const std::size_t m = trajectory.n_times();
  const std::size_t n_series = trajectory.n_series();
  if (m < 2) throw ConfigError("spectrum: need at least two samples");
  if (n_series == 0) throw ConfigError("spectrum: trajectory has no series");
  if (!weights.empty() && weights.size() != n_series) {
    throw ConfigError("spectrum: weight count " + std::to_string(weights.size()) +
                      " does not match series count " + std::to_string(n_series));
  }

  const double dt = trajectory.times[1] - trajectory.times[0];
  if (!(dt > 0.0)) throw ConfigError("spectrum: sample times must increase");
  const double tol = 1e-9 * dt + 1e-12 * std::abs(trajectory.times.back());
  for (std::size_t j = 1; j < m; ++j) {
    const double step = trajectory.times[j] - trajectory.times[j - 1];
    if (std::abs(step - dt) > tol) {
      throw ConfigError("spectrum: non-uniform sampling at index " +
                        std::to_string(j));
    }
  }

  std::vector<std::complex<double>> signal(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < n_series; ++k) {
      const double w = weights.empty() ? 1.0 : weights[k];
      const Eigen::Vector3d& v = trajectory.sigma[j][k];
      s += w * std::complex<double>(v.x(), v.y());
    }
    signal[j] = s;
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> transformed;
  fft.fwd(transformed, signal);

  Spectrum out;
  out.resolution = 2.0 * kPi / (static_cast<double>(m) * dt);
  out.freqs.resize(m);
  out.amps.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.freqs[i] = static_cast<double>(i) * out.resolution;
    out.amps[i] = std::abs(transformed[i]) / static_cast<double>(m);
  }
  return out;
}

std::vector<Peak> detect_peaks(const Spectrum& spectrum, double min_prominence) {
  const std::size_t m = spectrum.amps.size();
  if (m == 0 || spectrum.freqs.size() != m) {
    throw ConfigError("peak detection: empty or inconsistent spectrum");
  }
  if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
    throw ConfigError("peak detection: min_prominence must lie in (0, 1)");
  }

  std::vector<Peak> peaks;
  if (m < 3) return peaks;
  const double max_amp = *std::max_element(spectrum.amps.begin(), spectrum.amps.end());
  if (!(max_amp > 0.0)) return peaks;
  const double threshold = min_prominence * max_amp;

  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double a0 = spectrum.amps[i];
    const double am = spectrum.amps[i - 1];
    const double ap = spectrum.amps[i + 1];
    if (!(a0 > am && a0 > ap && a0 >= threshold)) continue;
    // Two-sided ratio refinement: the larger shoulder sits on the same side
    // as the true line; its ratio to the peak bin gives the signed offset.
    double delta = 0.0;
    if (ap >= am) {
      if (a0 + ap > 0.0) delta = ap / (a0 + ap);
    } else {
      if (a0 + am > 0.0) delta = -am / (a0 + am);
    }
    Peak p;
    p.omega = spectrum.freqs[i] + delta * spectrum.resolution;
    p.amplitude = a0;
    peaks.push_back(p);
  }
  return peaks;
}

namespace {

ModeFit fit_assignment(const std::vector<Peak>& peaks, bool odd_only) {
  const std::size_t count = peaks.size();
  ModeFit fit;
  fit.odd_only = odd_only;
  fit.modes.reserve(count);

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const int n = odd_only ? static_cast<int>(2 * i + 1) : static_cast<int>(i + 1);
    const double x = static_cast<double>(n) * static_cast<double>(n);
    const double y = peaks[i].omega;
    fit.modes.emplace_back(n, y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nd = static_cast<double>(count);
  const double var = sxx - sx * sx / nd;
  if (!(var > 0.0)) throw PipelineError("mode-law fit: degenerate index assignment");
  fit.c = (sxy - sx * sy / nd) / var;
  fit.omega0_fit = (sy - fit.c * sx) / nd;

  double ss = 0.0;
  for (const auto& [n, omega] : fit.modes) {
    const double model = fit.omega0_fit + fit.c * static_cast<double>(n) * static_cast<double>(n);
    ss += (omega - model) * (omega - model);
  }
  const double rms = std::sqrt(ss / nd);
  const double span = peaks.back().omega - peaks.front().omega;
  if (!(span > 0.0)) throw PipelineError("mode-law fit: peaks span zero frequency range");
  fit.residual = rms / span;
  return fit;
}

}  // namespace

ModeFit fit_mode_law(const std::vector<Peak>& peaks) {
  if (peaks.size() < 3) {
    throw PipelineError("mode-law fit: need at least 3 peaks, got " +
                        std::to_string(peaks.size()));
  }
  std::vector<Peak> sorted = peaks;
  std::sort(sorted.begin(), sorted.end(),
            [](const Peak& a, const Peak& b) { return a.omega < b.omega; });
  const ModeFit odd = fit_assignment(sorted, true);
  const ModeFit all = fit_assignment(sorted, false);
  return odd.residual <= all.residual ? odd : all;
}

}  // namespace spindyn::spectra
