#include "spindyn/eswr.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "spindyn/common.hpp"
#include "spindyn/landau_lifshitz.hpp"
#include "spindyn/spin_field.hpp"

namespace spindyn::spectra {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double mode_constant_theory(const ChainConfig& config,
                            const RingdownParams& params) {
  const double length = (static_cast<double>(params.points) - 1.0) * params.dz;
  const double a2 = config.lattice_const * config.lattice_const;
  return 2.0 * a2 * config.exchange * (kPi / length) * (kPi / length);
}

// Stretches the window to the nearest length at which the predicted mode
// offsets c*n^2 fall on integer transform bins.  A rectangular window then
// leaks almost nothing between lines, so the three peaks can be read off
// independently.  Offsets scale as n^2, so one commensurate choice serves
// every line at once, and a doubled mode constant stays commensurate too.
long snapped_periods(const ChainConfig& config, const RingdownParams& params) {
  const double per_period = mode_constant_theory(config, params) / config.omega0;
  const double desired = per_period * static_cast<double>(params.periods);
  if (!(desired >= 0.5)) return params.periods;  // lines too close to resolve
  const double target = std::round(desired);
  return std::max(1L, static_cast<long>(std::llround(target / per_period)));
}

// Integration schedule that lands every spectral sample exactly on the step
// grid: dt divides the sample interval, and the window closes after an
// integer number of level-splitting periods.
struct StepPlan {
  double dt = 0.0;
  long sub = 1;            // steps per spectral sample
  long steps = 0;          // total steps
  std::size_t window = 0;  // sample count used for the transform
};

StepPlan plan_window(const ChainConfig& config, const RingdownParams& params,
                     bool raman) {
  const long periods = snapped_periods(config, params);
  const double t_total =
      static_cast<double>(periods) * 2.0 * kPi / config.omega0;
  const long m = periods * static_cast<long>(params.samples_per_period);
  const double sample_dt = t_total / static_cast<double>(m);
  const double dt_max =
      classical::guard_dt(config, params.dz, raman) * params.dt_fraction;
  StepPlan plan;
  plan.sub = std::max(1L, static_cast<long>(std::ceil(sample_dt / dt_max)));
  plan.dt = sample_dt / static_cast<double>(plan.sub);
  plan.steps = m * plan.sub;
  plan.window = static_cast<std::size_t>(m);
  return plan;
}

classical::SpinField kicked_field(const RingdownParams& params) {
  classical::SpinField field;
  field.spacing = params.dz;
  field.boundary = classical::FieldBoundary::Pinned;
  field.values.assign(static_cast<std::size_t>(params.points),
                      Eigen::Vector3d(std::sin(params.tilt), 0.0,
                                      std::cos(params.tilt)));
  field.values.front() = Eigen::Vector3d(0.0, 0.0, 1.0);
  field.values.back() = Eigen::Vector3d(0.0, 0.0, 1.0);
  return field;
}

// Drops the final sample so the series covers exactly the rectangular window
// (the sample at t = T duplicates t = 0 for any period-T component).
Trajectory window_only(Trajectory&& tr, std::size_t count) {
  tr.times.resize(count);
  tr.sigma.resize(count);
  tr.norms.resize(count);
  return std::move(tr);
}

ChainConfig ringdown_config(const ChainConfig& config) {
  ChainConfig c = config;
  c.rabi = 0.0;  // ring-down: drive off
  c.validate();
  if (!(c.omega0 > 0.0)) {
    throw ConfigError("ring-down protocol: omega0 must be positive "
                      "(it sets the window length)");
  }
  return c;
}

}  // namespace

void RingdownParams::validate() const {
  if (points < 4) throw ConfigError("ring-down: need at least 4 grid points");
  if (!(dz > 0.0)) throw ConfigError("ring-down: dz must be positive");
  if (!std::isfinite(tilt)) throw ConfigError("ring-down: tilt must be finite");
  if (periods < 1) throw ConfigError("ring-down: periods must be >= 1");
  if (samples_per_period < 4) {
    throw ConfigError("ring-down: need at least 4 samples per period");
  }
  if (!(dt_fraction > 0.0 && dt_fraction <= 1.0)) {
    throw ConfigError("ring-down: dt_fraction must lie in (0, 1]");
  }
  if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
    throw ConfigError("ring-down: min_prominence must lie in (0, 1)");
  }
}

EswrRun run_eswr(const ChainConfig& config, const RingdownParams& params) {
  params.validate();
  const ChainConfig c = ringdown_config(config);
  const StepPlan plan = plan_window(c, params, false);

  classical::SpinField field = kicked_field(params);
  Trajectory tr = classical::integrate(field, c, classical::Model::Continuum,
                                       plan.dt, plan.steps, plan.sub);

  EswrRun run;
  run.trajectory = window_only(std::move(tr), plan.window);
  run.spectrum = ringdown_spectrum(run.trajectory);
  run.peaks = detect_peaks(run.spectrum, params.min_prominence);
  run.fit = fit_mode_law(run.peaks);
  run.c_theory = mode_constant_theory(c, params);
  return run;
}

RamanComparison raman_doubling(const ChainConfig& config,
                               const RingdownParams& params,
                               bool cross_term) {
  const EswrRun single = run_eswr(config, params);

  const ChainConfig c = ringdown_config(config);
  const StepPlan plan = plan_window(c, params, true);
  classical::RamanState state{kicked_field(params), kicked_field(params)};
  auto [tr1, tr2] = classical::integrate_raman(state, c, plan.dt, plan.steps,
                                               plan.sub, cross_term);
  (void)tr1;

  const Trajectory window = window_only(std::move(tr2), plan.window);
  const Spectrum spectrum = ringdown_spectrum(window);
  const ModeFit fit = fit_mode_law(detect_peaks(spectrum, params.min_prominence));

  RamanComparison out;
  out.c_single = single.fit.c;
  out.c_raman = fit.c;
  out.ratio = fit.c / single.fit.c;
  out.residual_single = single.fit.residual;
  out.residual_raman = fit.residual;
  out.cross_term = cross_term;
  return out;
}

std::vector<SweepPoint> sweep_exchange(const ChainConfig& config,
                                       const RingdownParams& params,
                                       const std::vector<double>& factors) {
  if (factors.empty()) throw ConfigError("exchange sweep: no factors given");
  std::vector<SweepPoint> points;
  points.reserve(factors.size());
  for (double f : factors) {
    ChainConfig c = config;
    c.exchange = config.exchange * f;
    const EswrRun run = run_eswr(c, params);
    SweepPoint p;
    p.parameter = c.exchange;
    p.c_fit = run.fit.c;
    p.c_theory = run.c_theory;
    p.residual = run.fit.residual;
    points.push_back(p);
  }
  return points;
}

std::vector<SweepPoint> sweep_length(const ChainConfig& config,
                                     const RingdownParams& params,
                                     const std::vector<int>& points_list) {
  if (points_list.empty()) throw ConfigError("length sweep: no point counts given");
  std::vector<SweepPoint> points;
  points.reserve(points_list.size());
  for (int n : points_list) {
    RingdownParams p2 = params;
    p2.points = n;
    // The mode spacing scales as 1/L^2; stretch the window to keep the lines
    // as many bins apart as in the base measurement.
    const double ratio = (static_cast<double>(n) - 1.0) /
                         (static_cast<double>(params.points) - 1.0);
    p2.periods = static_cast<long>(
        std::ceil(static_cast<double>(params.periods) * ratio * ratio));
    const EswrRun run = run_eswr(config, p2);
    SweepPoint sp;
    sp.parameter = (static_cast<double>(n) - 1.0) * params.dz;
    sp.c_fit = run.fit.c;
    sp.c_theory = run.c_theory;
    sp.residual = run.fit.residual;
    points.push_back(sp);
  }
  return points;
}

}  // namespace spindyn::spectra
