#pragma once

// Test-only dense representation built by explicit Kronecker products.
// Deliberately independent of the library's bit-pattern construction so the
// two routes can check each other.

#include <Eigen/Dense>

#include <complex>

#include "spindyn/operator_expr.hpp"

namespace oracle {

inline Eigen::Matrix2cd site_matrix(spindyn::algebra::SiteOp op) {
  using spindyn::algebra::SiteOp;
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (op) {
    case SiteOp::Raise:
      m(0, 1) = 1.0;  // |down> -> |up>, basis (up, down)
      break;
    case SiteOp::Lower:
      m(1, 0) = 1.0;
      break;
    case SiteOp::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Site 1 is the leftmost Kronecker factor, i.e. the most significant bit.
inline Eigen::MatrixXcd kron_matrix(const spindyn::algebra::OperatorExpr& e,
                                    int n_sites, double omega_t) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [mono, coeff] : e.terms()) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int s = 1; s <= n_sites; ++s) {
      const auto it = mono.factors.find(s);
      const Eigen::Matrix2cd m = it == mono.factors.end()
                                     ? Eigen::Matrix2cd::Identity()
                                     : site_matrix(it->second);
      term = kron(term, m);
    }
    total += coeff * std::polar(1.0, mono.phase * omega_t) * term;
  }
  return total;
}

}  // namespace oracle
