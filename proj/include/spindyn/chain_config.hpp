#pragma once

#include <cmath>

#include "spindyn/common.hpp"

namespace spindyn {

enum class Boundary { Open, Periodic };
enum class Frame { Lab, Rotating };

// Physical parameters of the driven spin-1/2 chain, in internal units with
// hbar = 1 (all couplings are angular frequencies) and lengths in units of
// the lattice constant unless stated otherwise.
struct ChainConfig {
  int sites = 1;
  double omega0 = 1.0;         // on-site level splitting
  double omega = 1.0;          // drive angular frequency
  double rabi = 0.0;           // drive coupling rate Omega
  double exchange = 0.0;       // nearest-neighbour exchange J, single-count convention
  double lattice_const = 1.0;  // a
  Boundary boundary = Boundary::Open;
  Frame frame = Frame::Lab;

  double detuning() const { return omega0 - omega; }

  void validate() const {
    if (sites < 1) throw ConfigError("chain.sites must be >= 1");
    if (boundary == Boundary::Periodic && sites < 2)
      throw ConfigError("periodic boundary requires chain.sites >= 2");
    if (rabi < 0) throw ConfigError("chain.rabi must be >= 0");
    if (lattice_const <= 0) throw ConfigError("chain.lattice_const must be > 0");
    for (double v : {omega0, omega, rabi, exchange, lattice_const}) {
      if (!std::isfinite(v)) throw ConfigError("chain parameters must be finite");
    }
  }
};

}  // namespace spindyn
