#include "spindyn/hamiltonian.hpp"

#include <stdexcept>

namespace spindyn::algebra {

namespace {

OperatorExpr bond_term(int n, int m) {
  using E = OperatorExpr;
  return E::site(SiteOp::Raise, n) * E::site(SiteOp::Lower, m) +
         E::site(SiteOp::Lower, n) * E::site(SiteOp::Raise, m) +
         Complex(0.5) * E::site(SiteOp::Z, n) * E::site(SiteOp::Z, m);
}

}  // namespace

OperatorExpr build_hamiltonian(const ChainConfig& config) {
  config.validate();
  using E = OperatorExpr;
  const int n_sites = config.sites;
  const bool rotating = config.frame == Frame::Rotating;
  const double level = rotating ? config.detuning() : config.omega0;

  OperatorExpr h;
  for (int n = 1; n <= n_sites; ++n) {
    h += Complex(level / 2.0) * E::site(SiteOp::Z, n);
    if (config.rabi != 0.0) {
      OperatorExpr drive =
          rotating
              ? E::site(SiteOp::Raise, n) + E::site(SiteOp::Lower, n)
              : E::site(SiteOp::Raise, n) * E::phase(-1) +
                    E::site(SiteOp::Lower, n) * E::phase(+1);
      h -= Complex(config.rabi) * drive;
    }
  }
  if (config.exchange != 0.0 && n_sites >= 2) {
    const int bonds = config.boundary == Boundary::Periodic ? n_sites : n_sites - 1;
    for (int n = 1; n <= bonds; ++n) {
      h += Complex(config.exchange) * bond_term(n, n % n_sites + 1);
    }
  }
  return h;
}

HeisenbergRhs heisenberg_rhs(int k, const OperatorExpr& H) {
  if (k < 1) throw std::invalid_argument("site index must be >= 1");
  const int top = H.max_site();
  if (top > 0 && k > top)
    throw std::invalid_argument("site index beyond the Hamiltonian's chain");

  const Complex minus_i{0.0, -1.0};
  HeisenbergRhs rhs;
  rhs.minus = minus_i * commutator(OperatorExpr::site(SiteOp::Lower, k), H);
  rhs.plus = minus_i * commutator(OperatorExpr::site(SiteOp::Raise, k), H);
  rhs.z = minus_i * commutator(OperatorExpr::site(SiteOp::Z, k), H);
  return rhs;
}

}  // namespace spindyn::algebra
