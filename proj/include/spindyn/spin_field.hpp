#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "spindyn/chain_config.hpp"

namespace spindyn::classical {

enum class FieldBoundary { Pinned, Free, Periodic };

// Classical 3-vector field on a 1D lattice or grid; the mean-field state.
struct SpinField {
  std::vector<Eigen::Vector3d> values;
  double spacing = 1.0;  // lattice constant a, or grid step dz
  FieldBoundary boundary = FieldBoundary::Pinned;

  std::size_t size() const { return values.size(); }
};

// Drive written in rotating components. e_plus multiplies e^{+i omega t},
// e_minus multiplies e^{-i omega t}; a real physical drive has
// e_minus = conj(e_plus). e_z is the static longitudinal component. All
// components are pre-multiplied by the coupling rate, so they carry units
// of angular frequency.
struct DriveField {
  std::complex<double> e_plus{0.0, 0.0};
  std::complex<double> e_minus{0.0, 0.0};
  double e_z = 0.0;

  // e_plus = e_minus = rabi, e_z = -omega0: the chain's drive seen by the
  // classical equations.
  static DriveField from_chain(const ChainConfig& c) {
    return {c.rabi, c.rabi, -c.omega0};
  }

  // Cartesian effective-field vector at time t. For the physical
  // (conjugate-pair) drive this is (2 rabi cos(omega t),
  // 2 rabi sin(omega t), e_z); any imaginary residue from non-conjugate
  // amplitudes is discarded.
  Eigen::Vector3d cartesian(double omega, double t) const {
    const std::complex<double> vp = e_plus * std::polar(1.0, omega * t);
    const std::complex<double> vm = e_minus * std::polar(1.0, -omega * t);
    const std::complex<double> i{0.0, 1.0};
    return {(vm + vp).real(), (i * (vm - vp)).real(), e_z};
  }
};

// Two-component state for the two-transition (Raman) dynamics. Both fields
// must share grid spacing and boundary mode.
struct RamanState {
  SpinField sigma1;
  SpinField sigma2;
};

}  // namespace spindyn::classical
