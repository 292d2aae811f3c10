#pragma once

#include <array>
#include <map>
#include <string>

#include "spindyn/chain_config.hpp"
#include "spindyn/hamiltonian.hpp"
#include "spindyn/operator_expr.hpp"

namespace spindyn::algebra {

enum class VectorComponent { Z, Plus, Minus };

// Reference right-hand sides the commutator engine is checked against:
//   ComponentWise -- the per-component equations of motion as printed in the
//                    reference derivation, transcribed verbatim (including
//                    any sign or prefactor peculiarities).
//   Determinant   -- the cross-product determinant form, expanded with each
//                    operator product replaced by half the anticommutator.
enum class ReferenceForm { ComponentWise, Determinant };

struct DerivationReport {
  VectorComponent component{};
  int site = 0;
  ReferenceForm form{};
  OperatorExpr engine;      // -i[sigma, H] computed by the engine
  OperatorExpr reference;   // transcribed reference expression
  OperatorExpr difference;  // reference - engine
  bool matches = false;     // difference == 0
  bool same_support = false;              // identical monomial sets
  bool matches_doubled_exchange = false;  // reference == engine with J -> 2J
  // reference/engine per shared monomial; documents scalar prefactor
  // discrepancies (values observed: 1, 2, -2).
  std::map<Monomial, Complex> coefficient_ratio;
  std::string summary;  // one-line human-readable verdict
};

// Transcription of the reference right-hand side for site k. Requires an
// interior site (both neighbours present).
OperatorExpr reference_rhs(const ChainConfig& config, int k,
                           VectorComponent component, ReferenceForm form);

// Compares the engine's Heisenberg right-hand sides at interior site k
// against the chosen reference form, component by component (order: z,
// plus, minus). Differences are reported verbatim; the engine result is
// never adjusted to fit the reference. The comparison is made in the
// explicitly time-dependent frame, where the reference equations are
// stated. Throws ConfigError unless 2 <= k <= N-1.
std::array<DerivationReport, 3> verify_derivation(const ChainConfig& config,
                                                  int k, ReferenceForm form);

const char* component_name(VectorComponent c);

}  // namespace spindyn::algebra
