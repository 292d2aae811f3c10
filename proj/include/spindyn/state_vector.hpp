#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spindyn/common.hpp"

namespace spindyn::quantum {

// Single-site state on the Bloch sphere: cos(theta/2)|+z> + e^{i phi}
// sin(theta/2)|-z>, with |+z> the sigma_z = +1 eigenstate.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

// Normalized amplitude vector over the 2^N product basis. Basis convention
// matches the dense operator representation: site 1 is the most significant
// bit, bit value 0 encodes sigma_z = +1.
class StateVector {
 public:
  StateVector(int n_sites, Eigen::VectorXcd amplitudes);

  // Product state from per-site Bloch angles (size fixes the chain length).
  static StateVector product(const std::vector<BlochAngles>& sites);

  // Every site in the sigma_z = -1 state: the default initial state.
  static StateVector all_down(int n_sites);

  // Every site in the sigma_z = +1 state.
  static StateVector all_up(int n_sites);

  int n_sites() const { return n_sites_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }

  // (<sigma_x>, <sigma_y>, <sigma_z>) at site k (1-based). Throws
  // std::invalid_argument when k is out of range.
  Eigen::Vector3d expect_sigma(int k) const;

 private:
  int n_sites_;
  Eigen::VectorXcd amps_;
};

}  // namespace spindyn::quantum
