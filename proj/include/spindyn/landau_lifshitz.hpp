#pragma once

#include <utility>
#include <vector>

#include "spindyn/spin_field.hpp"
#include "spindyn/trajectory.hpp"

namespace spindyn::classical {

// Mean-field precession equations: d sigma/dt = sigma x G. The closure
// <{A,B}> -> 2<A><B> turns the symmetrized operator cross product into the
// ordinary one, and the effective field G keeps the reference equations'
// exchange prefactor 2J.

// Discrete-chain form: G_k = drive(t) - (2 J) (sigma_{k+1} + sigma_{k-1}),
// with the drive vector (2 rabi cos, 2 rabi sin, -omega0). Boundary modes:
// pinned ends have zero rhs (held fixed, but still act as neighbours), free
// ends drop the missing neighbour, periodic wraps.
std::vector<Eigen::Vector3d> lattice_rhs(const SpinField& field, double t,
                                         const ChainConfig& config);

// Continuum form: rhs = sigma x drive(t) - (2 a^2 J) sigma x lap(sigma)
// with the second-difference Laplacian (s_{k+1}+s_{k-1}-2 s_k)/dz^2.
// Pinned ends: zero rhs; free ends: mirror (zero-gradient) stencil;
// periodic: wrap. Requires >= 3 grid points.
std::vector<Eigen::Vector3d> continuum_rhs(const SpinField& field, double t,
                                           const ChainConfig& config);

// Two-transition variant: each component precesses in the drive plus the
// total exchange curvature of both components,
//   d sigma_i/dt = sigma_i x drive - (2 a^2 J) sigma_i x lap(sigma_i)
//                                  - (2 a^2 J) sigma_i x lap(sigma_j),
// (i, j) in {(1, 2), (2, 1)}. This is the decomposition consistent with the
// sum sigma1 + sigma2 obeying the single-component equation; for identical
// components the exchange contribution doubles exactly, so the in-phase
// transverse modes sit at omega0 + 2 * (2 a^2 J) k^2.
// `cross_term` = false disables both cross terms (diagnostic switch that
// decouples the components into independent single-component systems).
std::pair<std::vector<Eigen::Vector3d>, std::vector<Eigen::Vector3d>>
raman_rhs(const RamanState& state, double t, const ChainConfig& config,
          bool cross_term = true);

// Small-amplitude transverse-wave frequency on the uniform background:
// omega(k) = omega0 + 2 a^2 J k^2. Oracle for the spectrum fits.
double linearized_dispersion(const ChainConfig& config, double k);

enum class Model { Lattice, Continuum };

// Classical fixed-step 4th-order integration, advancing the field in place
// and sampling every `sample_every` steps (step 0 included). No
// renormalization is applied. Guard (throws GuardError):
//   dt * (|omega0| + rabi + 8 a^2 |J| / dz^2) <= 0.1.
Trajectory integrate(SpinField& field, const ChainConfig& config, Model model,
                     double dt, long steps, long sample_every);

// Same for the two-component system; the guard uses the doubled exchange
// scale. Returns the (sigma1, sigma2) trajectories.
std::pair<Trajectory, Trajectory> integrate_raman(RamanState& state,
                                                  const ChainConfig& config,
                                                  double dt, long steps,
                                                  long sample_every,
                                                  bool cross_term = true);

// Largest stable dt under the guard, times `fraction` (default margin used
// by the shipped configs).
double guard_dt(const ChainConfig& config, double dz, bool raman);

// Throws GuardError (quoting the violated inequality) if dt exceeds the
// stability guard. Also applied inside the integrators; exposed so configs
// can be rejected before any work starts.
void check_step_guard(const ChainConfig& config, double dz, double dt,
                      bool raman);

}  // namespace spindyn::classical
