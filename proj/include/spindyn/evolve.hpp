#pragma once

#include <Eigen/Dense>

#include "spindyn/chain_config.hpp"
#include "spindyn/state_vector.hpp"
#include "spindyn/trajectory.hpp"

namespace spindyn::quantum {

// Dense Hamiltonian matrix at time t, assembled directly from basis-state
// bit patterns (independently of the symbolic operator representation, so
// the two construction routes can check each other).
//
// Lab frame: (omega0/2) sum sz + drive with explicit e^{-+ i omega t}
// phases + exchange. Rotating frame: time-independent, omega0 -> detuning
// and static drive -rabi sum (s+ + s-); exchange unchanged.
// Throws GuardError for more than 12 sites.
Eigen::MatrixXcd build_matrix(const ChainConfig& config, double t);

// Time evolution from t = 0. Rotating frame: exact one-step propagator from
// the eigendecomposition of the static matrix, applied repeatedly. Lab
// frame: classical 4th-order integration of the time-dependent Schroedinger
// equation, internally substepped well below the stability guard so norm
// drift stays within the documented bounds.
//
// The state is advanced in place; the returned trajectory samples
// expectation values every `sample_every` steps (step 0 included).
// Guard (throws GuardError): dt * max(|omega0|, |detuning|, rabi,
// 4*|exchange|, |omega|) <= 0.1.
Trajectory evolve(StateVector& state, const ChainConfig& config, double dt,
                  long steps, long sample_every);

// Throws GuardError (quoting the violated inequality) if dt exceeds the
// sampling guard above. Also applied inside evolve; exposed so configs can
// be rejected before any work starts.
void check_step_guard(const ChainConfig& config, double dt);

struct FrameDeviation {
  double max_z = 0.0;          // max |<sz>_lab - <sz>_rot| over samples
  double max_transverse = 0.0; // same after rotating the transverse moment
};

// Runs the same initial state through both frames up to time T (step dt)
// and reports the worst-case disagreement of site observables; sz is
// frame-invariant, the transverse moment is compared after applying the
// frame rotation e^{i omega t}.
FrameDeviation frame_consistency(const ChainConfig& config,
                                 const StateVector& initial, double T,
                                 double dt);

}  // namespace spindyn::quantum
