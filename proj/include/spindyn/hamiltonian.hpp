#pragma once

#include "spindyn/chain_config.hpp"
#include "spindyn/operator_expr.hpp"

namespace spindyn::algebra {

// Chain Hamiltonian in symbolic form (hbar = 1).
//
// Lab frame:
//   (omega0/2) sum_n sz(n)
//   - rabi sum_n [ s+(n) ph(-1) + s-(n) ph(+1) ]
//   + exchange sum_bonds [ s+(n) s-(n+1) + s-(n) s+(n+1) + 1/2 sz(n) sz(n+1) ]
// with the exchange sum written once (single-count convention) over open
// bonds n = 1..N-1, plus the wrap bond(s) for periodic chains.
//
// Rotating frame (co-rotation at the drive frequency): omega0 -> detuning,
// the drive becomes static -rabi sum_n [ s+(n) + s-(n) ], and the exchange
// terms are unchanged (they commute with the uniform frame rotation).
OperatorExpr build_hamiltonian(const ChainConfig& config);

struct HeisenbergRhs {
  OperatorExpr minus;  // d s-(k) / dt
  OperatorExpr plus;   // d s+(k) / dt
  OperatorExpr z;      // d sz(k) / dt
};

// Equations of motion d sigma/dt = -i [sigma, H] for the three components of
// the site-k vector operator. Throws std::invalid_argument when k < 1 or k
// exceeds the largest site appearing in H.
HeisenbergRhs heisenberg_rhs(int k, const OperatorExpr& H);

}  // namespace spindyn::algebra
