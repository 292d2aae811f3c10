#pragma once

#include <Eigen/Dense>

#include "spindyn/operator_expr.hpp"

namespace spindyn::algebra {

// Largest chain representable densely: 2^12 x 2^12 complex doubles.
inline constexpr int kMaxDenseSites = 12;

// Dense 2^n representation of an expression. Basis convention: site 1
// occupies the most significant bit of the basis index, and bit value 0
// encodes the sigma_z = +1 single-site state. Symbolic phase factors ph(m)
// evaluate to e^{i m omega_t}.
//
// Throws GuardError when n_sites exceeds kMaxDenseSites and
// std::invalid_argument when the expression references a site > n_sites.
Eigen::MatrixXcd to_matrix(const OperatorExpr& e, int n_sites, double omega_t);

// Same with all phase exponents frozen to zero (ph(m) -> 1), for
// time-independent comparisons.
Eigen::MatrixXcd to_matrix_static(const OperatorExpr& e, int n_sites);

}  // namespace spindyn::algebra
