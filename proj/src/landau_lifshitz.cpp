#include "spindyn/landau_lifshitz.hpp"

#include <cmath>
#include <stdexcept>

namespace spindyn::classical {

namespace {

using Vec3 = Eigen::Vector3d;

void check_field(const SpinField& f, std::size_t min_points) {
  if (f.size() < min_points)
    throw ConfigError("grid too small: need at least " +
                      std::to_string(min_points) + " points");
  if (f.spacing <= 0.0) throw ConfigError("grid spacing must be > 0");
}

// Neighbour lookup honouring the boundary mode; returns nullptr for a
// missing (dropped) neighbour on a free/pinned edge.
const Vec3* neighbour(const SpinField& f, std::size_t k, int delta) {
  const std::size_t n = f.size();
  if (delta < 0 && k == 0) {
    return f.boundary == FieldBoundary::Periodic ? &f.values[n - 1] : nullptr;
  }
  if (delta > 0 && k == n - 1) {
    return f.boundary == FieldBoundary::Periodic ? &f.values[0] : nullptr;
  }
  return &f.values[k + (delta < 0 ? -1 : 1)];
}

bool held_fixed(const SpinField& f, std::size_t k) {
  return f.boundary == FieldBoundary::Pinned && (k == 0 || k == f.size() - 1);
}

// Second difference with boundary handling; free ends mirror the edge value
// (zero-gradient), periodic wraps, pinned edges are never asked (rhs = 0).
Vec3 laplacian(const SpinField& f, std::size_t k) {
  const Vec3& center = f.values[k];
  const Vec3* left = neighbour(f, k, -1);
  const Vec3* right = neighbour(f, k, +1);
  const Vec3& l = left ? *left : center;
  const Vec3& r = right ? *right : center;
  return (l + r - 2.0 * center) / (f.spacing * f.spacing);
}

}  // namespace

std::vector<Vec3> lattice_rhs(const SpinField& field, double t,
                              const ChainConfig& config) {
  check_field(field, 1);
  const DriveField drive = DriveField::from_chain(config);
  const Vec3 g_drive = drive.cartesian(config.omega, t);
  const double two_j = 2.0 * config.exchange;

  std::vector<Vec3> rhs(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) {
    if (held_fixed(field, k)) {
      rhs[k].setZero();
      continue;
    }
    Vec3 g = g_drive;
    if (const Vec3* l = neighbour(field, k, -1)) g -= two_j * (*l);
    if (const Vec3* r = neighbour(field, k, +1)) g -= two_j * (*r);
    rhs[k] = field.values[k].cross(g);
  }
  return rhs;
}

std::vector<Vec3> continuum_rhs(const SpinField& field, double t,
                                const ChainConfig& config) {
  check_field(field, 3);
  const DriveField drive = DriveField::from_chain(config);
  const Vec3 g_drive = drive.cartesian(config.omega, t);
  const double xc = 2.0 * config.lattice_const * config.lattice_const *
                    config.exchange;

  std::vector<Vec3> rhs(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) {
    if (held_fixed(field, k)) {
      rhs[k].setZero();
      continue;
    }
    const Vec3& s = field.values[k];
    rhs[k] = s.cross(g_drive) - xc * s.cross(laplacian(field, k));
  }
  return rhs;
}

std::pair<std::vector<Vec3>, std::vector<Vec3>> raman_rhs(
    const RamanState& state, double t, const ChainConfig& config,
    bool cross_term) {
  const SpinField& s1 = state.sigma1;
  const SpinField& s2 = state.sigma2;
  if (s1.size() != s2.size() || s1.spacing != s2.spacing ||
      s1.boundary != s2.boundary)
    throw ConfigError("the two components must share one grid");

  std::vector<Vec3> r1 = continuum_rhs(s1, t, config);
  std::vector<Vec3> r2 = continuum_rhs(s2, t, config);
  if (cross_term) {
    const double xc = 2.0 * config.lattice_const * config.lattice_const *
                      config.exchange;
    for (std::size_t k = 0; k < s2.size(); ++k) {
      if (!held_fixed(s1, k)) r1[k] -= xc * s1.values[k].cross(laplacian(s2, k));
      if (!held_fixed(s2, k)) r2[k] -= xc * s2.values[k].cross(laplacian(s1, k));
    }
  }
  return {std::move(r1), std::move(r2)};
}

double linearized_dispersion(const ChainConfig& config, double k) {
  return config.omega0 +
         2.0 * config.lattice_const * config.lattice_const * config.exchange *
             k * k;
}

namespace {

double guard_scale(const ChainConfig& c, double dz, bool raman) {
  const double a2 = c.lattice_const * c.lattice_const;
  const double exchange_scale = 8.0 * a2 * std::abs(c.exchange) / (dz * dz);
  return std::abs(c.omega0) + c.rabi + (raman ? 2.0 : 1.0) * exchange_scale;
}

struct Sampler {
  Trajectory tr;

  explicit Sampler(const SpinField& f, bool lattice_coords) {
    for (std::size_t k = 0; k < f.size(); ++k)
      tr.series_coord.push_back(lattice_coords ? static_cast<double>(k + 1)
                                               : static_cast<double>(k) *
                                                     f.spacing);
  }

  void operator()(const SpinField& f, double t) {
    tr.times.push_back(t);
    auto& row = tr.sigma.emplace_back();
    auto& nrow = tr.norms.emplace_back();
    row.reserve(f.size());
    nrow.reserve(f.size());
    for (const Vec3& v : f.values) {
      row.push_back(v);
      nrow.push_back(v.norm());
    }
  }
};

void validate_stepping(double dt, long steps, long sample_every) {
  if (dt <= 0.0) throw ConfigError("dt must be > 0");
  if (steps < 0) throw ConfigError("steps must be >= 0");
  if (sample_every < 1) throw ConfigError("sample_every must be >= 1");
}

// One Runge-Kutta step of the flattened field under a generic rhs.
template <typename Rhs>
void rk4_step(SpinField& f, double t, double h, const Rhs& rhs) {
  const std::vector<Vec3> y0 = f.values;
  const std::vector<Vec3> k1 = rhs(f, t);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.values[i] = y0[i] + (0.5 * h) * k1[i];
  const std::vector<Vec3> k2 = rhs(f, t + 0.5 * h);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.values[i] = y0[i] + (0.5 * h) * k2[i];
  const std::vector<Vec3> k3 = rhs(f, t + 0.5 * h);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = y0[i] + h * k3[i];
  const std::vector<Vec3> k4 = rhs(f, t + h);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.values[i] =
        y0[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

double guard_dt(const ChainConfig& config, double dz, bool raman) {
  return 0.1 / guard_scale(config, dz, raman);
}

void check_step_guard(const ChainConfig& config, double dz, double dt,
                      bool raman) {
  const double v = dt * guard_scale(config, dz, raman);
  if (v > 0.1)
    throw GuardError(
        "explicit-stability guard violated: dt*(|omega0| + rabi + " +
        std::string(raman ? "16" : "8") + " a^2|J|/dz^2) = " +
        std::to_string(v) + " > 0.1");
}

Trajectory integrate(SpinField& field, const ChainConfig& config, Model model,
                     double dt, long steps, long sample_every) {
  config.validate();
  check_field(field, model == Model::Continuum ? 3 : 1);
  validate_stepping(dt, steps, sample_every);
  check_step_guard(config, field.spacing, dt, false);

  Sampler sample(field, model == Model::Lattice);
  sample(field, 0.0);
  auto rhs = [&](const SpinField& f, double t) {
    return model == Model::Lattice ? lattice_rhs(f, t, config)
                                   : continuum_rhs(f, t, config);
  };
  for (long step = 1; step <= steps; ++step) {
    rk4_step(field, (step - 1) * dt, dt, rhs);
    if (step % sample_every == 0) sample(field, step * dt);
  }
  return std::move(sample.tr);
}

std::pair<Trajectory, Trajectory> integrate_raman(RamanState& state,
                                                  const ChainConfig& config,
                                                  double dt, long steps,
                                                  long sample_every,
                                                  bool cross_term) {
  config.validate();
  check_field(state.sigma1, 3);
  check_field(state.sigma2, 3);
  validate_stepping(dt, steps, sample_every);
  check_step_guard(config, state.sigma1.spacing, dt, true);

  Sampler sample1(state.sigma1, false);
  Sampler sample2(state.sigma2, false);
  sample1(state.sigma1, 0.0);
  sample2(state.sigma2, 0.0);

  // Lockstep RK4 on the joint state (the two components are coupled).
  const std::size_t n = state.sigma1.size();
  for (long step = 1; step <= steps; ++step) {
    const double t0 = (step - 1) * dt;
    const std::vector<Vec3> y1 = state.sigma1.values;
    const std::vector<Vec3> y2 = state.sigma2.values;

    auto eval = [&](double t) { return raman_rhs(state, t, config, cross_term); };
    auto advance = [&](const std::vector<Vec3>& k1, const std::vector<Vec3>& k2,
                       double h) {
      for (std::size_t i = 0; i < n; ++i) {
        state.sigma1.values[i] = y1[i] + h * k1[i];
        state.sigma2.values[i] = y2[i] + h * k2[i];
      }
    };

    const auto [a1, a2] = eval(t0);
    advance(a1, a2, 0.5 * dt);
    const auto [b1, b2] = eval(t0 + 0.5 * dt);
    advance(b1, b2, 0.5 * dt);
    const auto [c1, c2] = eval(t0 + 0.5 * dt);
    advance(c1, c2, dt);
    const auto [d1, d2] = eval(t0 + dt);
    for (std::size_t i = 0; i < n; ++i) {
      state.sigma1.values[i] =
          y1[i] + (dt / 6.0) * (a1[i] + 2.0 * b1[i] + 2.0 * c1[i] + d1[i]);
      state.sigma2.values[i] =
          y2[i] + (dt / 6.0) * (a2[i] + 2.0 * b2[i] + 2.0 * c2[i] + d2[i]);
    }
    if (step % sample_every == 0) {
      sample1(state.sigma1, step * dt);
      sample2(state.sigma2, step * dt);
    }
  }
  return {std::move(sample1.tr), std::move(sample2.tr)};
}

}  // namespace spindyn::classical
