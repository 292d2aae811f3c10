#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spindyn/common.hpp"
#include "spindyn/eswr.hpp"
#include "spindyn/spectrum.hpp"
#include "spindyn/trajectory.hpp"

using namespace spindyn;
using namespace spindyn::spectra;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Trajectory tone_trajectory(const std::vector<std::pair<double, double>>& tones,
                           std::size_t samples, double dt) {
  Trajectory tr;
  tr.series_coord = {1.0};
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) * dt;
    Complex m = 0.0;
    for (const auto& [omega, amp] : tones) m += amp * std::polar(1.0, omega * t);
    tr.times.push_back(t);
    tr.sigma.push_back({Eigen::Vector3d(m.real(), m.imag(), 0.0)});
    tr.norms.push_back({1.0});
  }
  return tr;
}

std::vector<double> dft_amps(const Trajectory& tr) {
  const std::size_t m_count = tr.n_times();
  std::vector<double> amps(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < m_count; ++j) {
      const Complex s(tr.sigma[j][0].x(), tr.sigma[j][0].y());
      sum += s * std::polar(1.0, -2.0 * kPi * static_cast<double>(m) *
                                     static_cast<double>(j) /
                                     static_cast<double>(m_count));
    }
    amps[m] = std::abs(sum) / static_cast<double>(m_count);
  }
  return amps;
}

ChainConfig ring_config() {
  ChainConfig c;
  c.sites = 1;
  c.omega0 = 1.0;
  c.omega = 1.0;
  c.rabi = 0.0;
  c.exchange = 1.0;
  c.lattice_const = 1.0;
  return c;
}

}  // namespace

TEST_CASE("transform matches a direct evaluation of the sum") {
  const double dt = 0.1;
  const std::size_t m = 256;
  const double res = 2.0 * kPi / (m * dt);
  const Trajectory tr = tone_trajectory(
      {{res * 20.0, 1.0}, {res * 33.5, 0.4}, {res * 57.0, 0.2}}, m, dt);
  const Spectrum sp = ringdown_spectrum(tr);

  CHECK(sp.resolution == doctest::Approx(res).epsilon(1e-14));
  REQUIRE(sp.amps.size() == m);
  REQUIRE(sp.freqs.size() == m);
  CHECK(sp.freqs[1] == doctest::Approx(res).epsilon(1e-14));

  const std::vector<double> ref = dft_amps(tr);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    worst = std::max(worst, std::abs(sp.amps[i] - ref[i]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("power balance of the transform") {
  std::mt19937 rng(8086);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Trajectory tr;
  tr.series_coord = {1.0};
  const std::size_t m = 333;  // non-power-of-two length
  double mean_sq = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = u(rng);
    const double y = u(rng);
    tr.times.push_back(0.05 * static_cast<double>(j));
    tr.sigma.push_back({Eigen::Vector3d(x, y, 0.0)});
    tr.norms.push_back({1.0});
    mean_sq += (x * x + y * y) / static_cast<double>(m);
  }
  const Spectrum sp = ringdown_spectrum(tr);
  double total = 0.0;
  for (double a : sp.amps) total += a * a;
  CHECK(total == doctest::Approx(mean_sq).epsilon(1e-12));
}

TEST_CASE("weighted sums select series") {
  const double dt = 0.1;
  Trajectory two;
  two.series_coord = {1.0, 2.0};
  for (std::size_t j = 0; j < 128; ++j) {
    const double t = dt * static_cast<double>(j);
    two.times.push_back(t);
    two.sigma.push_back({Eigen::Vector3d(std::cos(t), std::sin(t), 0.0),
                         Eigen::Vector3d(std::cos(3.0 * t), std::sin(3.0 * t), 0.0)});
    two.norms.push_back({1.0, 1.0});
  }
  const Spectrum first = ringdown_spectrum(two, {1.0, 0.0});
  const Spectrum second = ringdown_spectrum(two, {0.0, 1.0});
  // Each weighted spectrum must peak at its own tone.
  const auto argmax = [](const Spectrum& s) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
      if (s.amps[i] > s.amps[best]) best = i;
    }
    return best;
  };
  CHECK(first.freqs[argmax(first)] == doctest::Approx(1.0).epsilon(0.05));
  CHECK(second.freqs[argmax(second)] == doctest::Approx(3.0).epsilon(0.05));
  CHECK_THROWS_AS(ringdown_spectrum(two, {1.0}), ConfigError);
}

TEST_CASE("transform input validation") {
  Trajectory tr = tone_trajectory({{1.0, 1.0}}, 16, 0.1);
  tr.times[8] += 0.01;  // break uniformity
  CHECK_THROWS_AS(ringdown_spectrum(tr), ConfigError);

  const Trajectory one = tone_trajectory({{1.0, 1.0}}, 1, 0.1);
  CHECK_THROWS_AS(ringdown_spectrum(one), ConfigError);
}

TEST_CASE("sub-bin refinement of an isolated line") {
  const double dt = 0.05;
  const std::size_t m = 1024;
  const double res = 2.0 * kPi / (m * dt);
  for (const double offset : {0.3, 0.5, 0.7, -0.4}) {
    const double omega = res * (100.0 + offset);
    const Trajectory tr = tone_trajectory({{omega, 1.0}}, m, dt);
    const auto peaks = detect_peaks(ringdown_spectrum(tr), 0.05);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].omega - omega) <= res / 100.0);
  }
}

TEST_CASE("negative sub-bin offsets pick the lower shoulder") {
  const double dt = 0.05;
  const std::size_t m = 1024;
  const double res = 2.0 * kPi / (m * dt);
  const double omega = res * (99.6);  // bin 100 hosts, shoulder below
  const Trajectory tr = tone_trajectory({{omega, 1.0}}, m, dt);
  const auto peaks = detect_peaks(ringdown_spectrum(tr), 0.05);
  REQUIRE(peaks.size() == 1);
  CHECK(std::abs(peaks[0].omega - omega) <= res / 100.0);
}

TEST_CASE("close tones are still resolved") {
  const double dt = 0.05;
  const std::size_t m = 1024;
  const double res = 2.0 * kPi / (m * dt);
  const Trajectory tr = tone_trajectory(
      {{res * 100.0, 1.0}, {res * 103.0, 0.3}}, m, dt);
  const auto peaks = detect_peaks(ringdown_spectrum(tr), 0.05);
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(peaks[0].omega - res * 100.0) <= res / 20.0);
  CHECK(std::abs(peaks[1].omega - res * 103.0) <= res / 20.0);
  CHECK(peaks[0].amplitude == doctest::Approx(1.0).epsilon(0.02));
  CHECK(peaks[1].amplitude == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("prominence threshold and flat spectra") {
  const double dt = 0.05;
  const std::size_t m = 1024;
  const double res = 2.0 * kPi / (m * dt);
  const Trajectory tr = tone_trajectory(
      {{res * 100.0, 1.0}, {res * 200.0, 0.03}}, m, dt);
  const Spectrum sp = ringdown_spectrum(tr);
  CHECK(detect_peaks(sp, 0.05).size() == 1);
  CHECK(detect_peaks(sp, 0.01).size() == 2);
  CHECK_THROWS_AS(detect_peaks(sp, 0.0), ConfigError);
  CHECK_THROWS_AS(detect_peaks(sp, 1.0), ConfigError);

  Spectrum flat;
  flat.resolution = 1.0;
  flat.freqs.assign(64, 0.0);
  flat.amps.assign(64, 0.5);
  CHECK(detect_peaks(flat, 0.1).empty());

  Spectrum silent;
  silent.resolution = 1.0;
  silent.freqs.assign(64, 0.0);
  silent.amps.assign(64, 0.0);
  CHECK(detect_peaks(silent, 0.1).empty());
}

TEST_CASE("mode-law fit recovers an exact odd series") {
  std::vector<Peak> peaks;
  for (const int n : {1, 3, 5, 7}) {
    peaks.push_back({5.0 + 0.1 * n * n, 1.0 / (n * n)});
  }
  const ModeFit fit = fit_mode_law(peaks);
  CHECK(fit.odd_only);
  CHECK(fit.omega0_fit == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit.c == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit.residual <= 1e-12);
  REQUIRE(fit.modes.size() == 4);
  CHECK(fit.modes[0].first == 1);
  CHECK(fit.modes[3].first == 7);
}

TEST_CASE("mode-law fit recovers an exact consecutive series") {
  std::vector<Peak> peaks;
  for (const int n : {1, 2, 3, 4}) {
    peaks.push_back({5.0 + 0.1 * n * n, 1.0});
  }
  const ModeFit fit = fit_mode_law(peaks);
  CHECK_FALSE(fit.odd_only);
  CHECK(fit.c == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit.residual <= 1e-12);
}

TEST_CASE("mode-law fit rejects unusable inputs") {
  CHECK_THROWS_AS(fit_mode_law({}), PipelineError);
  CHECK_THROWS_AS(fit_mode_law({{1.0, 1.0}, {2.0, 1.0}}), PipelineError);
  // Coincident frequencies: zero span.
  CHECK_THROWS_AS(fit_mode_law({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}),
                  PipelineError);
}

TEST_CASE("peaks arrive sorted even from unsorted input") {
  const ModeFit fit = fit_mode_law({{5.9, 1.0}, {5.1, 1.0}, {5.4, 1.0}});
  CHECK(fit.modes[0].second == doctest::Approx(5.1));
  CHECK(fit.modes[2].second == doctest::Approx(5.9));
}

TEST_CASE("ring-down protocol end to end at reduced size") {
  ChainConfig c = ring_config();
  RingdownParams p;
  p.points = 32;
  p.periods = 80;
  const EswrRun run = run_eswr(c, p);

  CHECK(run.c_theory == doctest::Approx(2.0 * (kPi / 31.0) * (kPi / 31.0))
                            .epsilon(1e-14));
  CHECK(run.fit.odd_only);
  CHECK(run.peaks.size() >= 3);
  CHECK(run.fit.c == doctest::Approx(run.c_theory).epsilon(0.02));
  CHECK(run.fit.residual <= 0.005);
  CHECK(run.fit.omega0_fit == doctest::Approx(c.omega0).epsilon(0.005));
  // The protocol window drops the duplicated end sample.
  CHECK(run.trajectory.n_times() == run.spectrum.amps.size());

  // Validation of the protocol parameters.
  RingdownParams bad = p;
  bad.points = 3;
  CHECK_THROWS_AS(run_eswr(c, bad), ConfigError);
  bad = p;
  bad.min_prominence = 1.5;
  CHECK_THROWS_AS(run_eswr(c, bad), ConfigError);
  ChainConfig flat = c;
  flat.omega0 = 0.0;
  CHECK_THROWS_AS(run_eswr(flat, p), ConfigError);
}

TEST_CASE("ring-down fit fails cleanly when the exchange is off") {
  ChainConfig c = ring_config();
  c.exchange = 0.0;  // all modes collapse onto omega0: nothing to fit
  RingdownParams p;
  p.points = 16;
  p.periods = 20;
  CHECK_THROWS_AS(run_eswr(c, p), PipelineError);
}

TEST_CASE("doubling comparison at reduced size") {
  ChainConfig c = ring_config();
  RingdownParams p;
  p.points = 32;
  p.periods = 80;
  const RamanComparison on = raman_doubling(c, p, true);
  CHECK(on.cross_term);
  CHECK(on.ratio == doctest::Approx(2.0).epsilon(0.03));
  CHECK(on.residual_single <= 0.005);
  CHECK(on.residual_raman <= 0.005);

  const RamanComparison off = raman_doubling(c, p, false);
  CHECK_FALSE(off.cross_term);
  CHECK(off.ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exchange and length sweeps at reduced size") {
  ChainConfig c = ring_config();
  RingdownParams p;
  p.points = 32;
  p.periods = 80;
  const auto ex = sweep_exchange(c, p, {0.5, 1.0, 2.0});
  REQUIRE(ex.size() == 3);
  for (const SweepPoint& point : ex) {
    CHECK(point.c_fit == doctest::Approx(point.c_theory).epsilon(0.03));
    CHECK(point.residual <= 0.005);
  }
  CHECK(ex[2].c_theory == doctest::Approx(4.0 * ex[0].c_theory).epsilon(1e-12));

  const auto len = sweep_length(c, p, {32, 48});
  REQUIRE(len.size() == 2);
  CHECK(len[0].parameter == doctest::Approx(31.0));
  CHECK(len[1].parameter == doctest::Approx(47.0));
  for (const SweepPoint& point : len) {
    CHECK(point.c_fit == doctest::Approx(point.c_theory).epsilon(0.03));
  }
  CHECK_THROWS_AS(sweep_exchange(c, p, {}), ConfigError);
  CHECK_THROWS_AS(sweep_length(c, p, {}), ConfigError);
}
