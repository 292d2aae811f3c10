#include "spindyn/state_vector.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace spindyn::quantum {

namespace {

constexpr int kMaxSites = 12;

void check_sites(int n) {
  if (n < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (n > kMaxSites)
    throw GuardError("state vectors limited to " + std::to_string(kMaxSites) +
                     " sites");
}

}  // namespace

StateVector::StateVector(int n_sites, Eigen::VectorXcd amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  check_sites(n_sites_);
  if (amps_.size() != (1L << n_sites_))
    throw std::invalid_argument("amplitude vector has wrong dimension");
}

StateVector StateVector::product(const std::vector<BlochAngles>& sites) {
  const int n = static_cast<int>(sites.size());
  check_sites(n);
  const long dim = 1L << n;
  Eigen::VectorXcd amps(dim);
  for (long b = 0; b < dim; ++b) {
    std::complex<double> amp = 1.0;
    for (int k = 1; k <= n; ++k) {
      const BlochAngles& s = sites[static_cast<std::size_t>(k - 1)];
      const bool down = (b >> (n - k)) & 1;
      amp *= down ? std::polar(std::sin(s.theta / 2.0), s.phi)
                  : std::complex<double>(std::cos(s.theta / 2.0), 0.0);
      if (amp == 0.0) break;
    }
    amps[b] = amp;
  }
  return StateVector(n, std::move(amps));
}

StateVector StateVector::all_down(int n_sites) {
  check_sites(n_sites);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(1L << n_sites);
  amps[(1L << n_sites) - 1] = 1.0;  // all bits set
  return StateVector(n_sites, std::move(amps));
}

StateVector StateVector::all_up(int n_sites) {
  check_sites(n_sites);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(1L << n_sites);
  amps[0] = 1.0;
  return StateVector(n_sites, std::move(amps));
}

Eigen::Vector3d StateVector::expect_sigma(int k) const {
  if (k < 1 || k > n_sites_)
    throw std::invalid_argument("site index out of range");
  const long dim = amps_.size();
  const long bit = 1L << (n_sites_ - k);
  double z = 0.0;
  std::complex<double> raise = 0.0;  // <sigma_k^+>
  for (long b = 0; b < dim; ++b) {
    const double p = std::norm(amps_[b]);
    if (b & bit) {
      z -= p;
      // sigma^+ maps |down> at site k to |up>: pairs b with b & ~bit.
      raise += std::conj(amps_[b & ~bit]) * amps_[b];
    } else {
      z += p;
    }
  }
  return {2.0 * raise.real(), 2.0 * raise.imag(), z};
}

}  // namespace spindyn::quantum
