#include "spindyn/matrix_rep.hpp"

#include <cmath>
#include <stdexcept>

namespace spindyn::algebra {

namespace {

Eigen::MatrixXcd build(const OperatorExpr& e, int n_sites, bool frozen,
                       double omega_t) {
  if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
  if (n_sites > kMaxDenseSites)
    throw GuardError("dense representation limited to " +
                     std::to_string(kMaxDenseSites) + " sites");
  if (e.max_site() > n_sites)
    throw std::invalid_argument("expression references site beyond n_sites");

  const long dim = 1L << n_sites;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [mono, coeff] : e.terms()) {
    Complex c = coeff;
    if (!frozen && mono.phase != 0) c *= std::polar(1.0, mono.phase * omega_t);
    for (long col = 0; col < dim; ++col) {
      long row = col;
      double sign = 1.0;
      bool alive = true;
      for (const auto& [site, op] : mono.factors) {
        const long bit = 1L << (n_sites - site);  // site 1 = most significant
        const bool upper = (row & bit) == 0;      // bit 0 <=> sigma_z = +1
        switch (op) {
          case SiteOp::Z:
            sign = upper ? sign : -sign;
            break;
          case SiteOp::Raise:  // |lower> -> |upper>
            if (upper) {
              alive = false;
            } else {
              row &= ~bit;
            }
            break;
          case SiteOp::Lower:  // |upper> -> |lower>
            if (upper) {
              row |= bit;
            } else {
              alive = false;
            }
            break;
        }
        if (!alive) break;
      }
      if (alive) m(row, col) += c * sign;
    }
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd to_matrix(const OperatorExpr& e, int n_sites, double omega_t) {
  return build(e, n_sites, false, omega_t);
}

Eigen::MatrixXcd to_matrix_static(const OperatorExpr& e, int n_sites) {
  return build(e, n_sites, true, 0.0);
}

}  // namespace spindyn::algebra
