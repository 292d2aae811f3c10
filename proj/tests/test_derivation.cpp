#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "oracle_matrix.hpp"
#include "spindyn/chain_config.hpp"
#include "spindyn/derivation.hpp"
#include "spindyn/hamiltonian.hpp"
#include "spindyn/operator_expr.hpp"

using namespace spindyn;
using namespace spindyn::algebra;
using E = OperatorExpr;

namespace {

// Generic interior-site setup used by the frozen expectations below:
// omega0 = 1, Omega = 0.5, J = 1/4 on a 3-site open chain, site k = 2.
ChainConfig probe_config() {
  ChainConfig c;
  c.sites = 3;
  c.omega0 = 1.0;
  c.omega = 0.8;
  c.rabi = 0.5;
  c.exchange = 0.25;
  return c;
}

std::multiset<int> rounded_ratios(const DerivationReport& rep) {
  std::multiset<int> out;
  for (const auto& [mono, ratio] : rep.coefficient_ratio) {
    CHECK(std::abs(ratio.imag()) <= 1e-9);
    const double r = ratio.real();
    CHECK(std::abs(r - std::round(r)) <= 1e-9);
    out.insert(static_cast<int>(std::round(r)));
  }
  return out;
}

std::set<int> ratio_values(const DerivationReport& rep) {
  std::set<int> out;
  for (int r : rounded_ratios(rep)) out.insert(r);
  return out;
}

}  // namespace

TEST_CASE("engine right-hand sides equal the hand-derived forms") {
  // d sz/dt  = 2i W (ph(-1) s+ - ph(+1) s-) + 2i J [s- S+ - s+ S-]
  // d s+/dt  = i w0 s+ + i W ph(+1) sz + i J [s+ Sz - sz S+]
  // d s-/dt  = -i w0 s- - i W ph(-1) sz - i J [s- Sz - sz S-]
  // with S m the sum over the two neighbours, here w0 = 1, W = 1/2, J = 1/4.
  const ChainConfig c = probe_config();
  const HeisenbergRhs rhs = heisenberg_rhs(2, build_hamiltonian(c));

  const E z_expect = parse_expr(
      "1i s+(2) ph(-1) - 1i s-(2) ph(1)"
      " + 0.5i s+(1) s-(2) - 0.5i s-(1) s+(2)"
      " + 0.5i s-(2) s+(3) - 0.5i s+(2) s-(3)");
  const E plus_expect = parse_expr(
      "1i s+(2) + 0.5i sz(2) ph(1)"
      " + 0.25i sz(1) s+(2) + 0.25i s+(2) sz(3)"
      " - 0.25i s+(1) sz(2) - 0.25i sz(2) s+(3)");
  const E minus_expect = parse_expr(
      "-1i s-(2) - 0.5i sz(2) ph(-1)"
      " - 0.25i sz(1) s-(2) - 0.25i s-(2) sz(3)"
      " + 0.25i s-(1) sz(2) + 0.25i sz(2) s-(3)");

  CHECK(approx_equal(rhs.z, z_expect, 1e-12));
  CHECK(approx_equal(rhs.plus, plus_expect, 1e-12));
  CHECK(approx_equal(rhs.minus, minus_expect, 1e-12));

  // The plus and minus equations are adjoints of each other.
  CHECK(approx_equal(rhs.minus, rhs.plus.adjoint(), 1e-12));
}

TEST_CASE("component-wise reference: z and plus match at doubled exchange") {
  const ChainConfig c = probe_config();
  const auto reports = verify_derivation(c, 2, ReferenceForm::ComponentWise);

  const DerivationReport& z = reports[0];
  const DerivationReport& plus = reports[1];
  CHECK(z.component == VectorComponent::Z);
  CHECK(plus.component == VectorComponent::Plus);

  for (const DerivationReport* rep : {&z, &plus}) {
    CHECK_FALSE(rep->matches);
    CHECK(rep->matches_doubled_exchange);
    CHECK(rep->same_support);
    CHECK(ratio_values(*rep) == std::set<int>{1, 2});
  }

  // The difference is exactly one extra copy of the engine's exchange part.
  ChainConfig doubled = c;
  doubled.exchange = 2.0 * c.exchange;
  const HeisenbergRhs engine2 = heisenberg_rhs(2, build_hamiltonian(doubled));
  const HeisenbergRhs engine1 = heisenberg_rhs(2, build_hamiltonian(c));
  CHECK(approx_equal(z.difference, engine2.z - engine1.z, 1e-12));
  CHECK(approx_equal(plus.difference, engine2.plus - engine1.plus, 1e-12));
}

TEST_CASE("component-wise reference: minus carries a sign defect") {
  const ChainConfig c = probe_config();
  const auto reports = verify_derivation(c, 2, ReferenceForm::ComponentWise);
  const DerivationReport& minus = reports[2];
  CHECK(minus.component == VectorComponent::Minus);

  CHECK_FALSE(minus.matches);
  CHECK_FALSE(minus.matches_doubled_exchange);
  CHECK(minus.same_support);
  CHECK(ratio_values(minus) == std::set<int>{-2, 1, 2});

  // Relative to the doubled-exchange engine the defect is concentrated in
  // the sz(k) s-(k+-1) monomials: -4iJ (sz(2) s-(1) + sz(2) s-(3)),
  // here with J = 1/4.
  ChainConfig doubled = c;
  doubled.exchange = 2.0 * c.exchange;
  const HeisenbergRhs engine2 = heisenberg_rhs(2, build_hamiltonian(doubled));
  const E defect = minus.reference - engine2.minus;
  CHECK(approx_equal(defect,
                     parse_expr("-1i s-(1) sz(2) - 1i sz(2) s-(3)"), 1e-12));

  // Frozen total difference against the engine as reported (J = 1/4).
  const E expected_difference = parse_expr(
      "-0.75i s-(1) sz(2) - 0.25i sz(1) s-(2)"
      " - 0.25i s-(2) sz(3) - 0.75i sz(2) s-(3)");
  CHECK(approx_equal(minus.difference, expected_difference, 1e-12));
}

TEST_CASE("determinant reference matches the doubled-exchange engine exactly") {
  const ChainConfig c = probe_config();
  const auto reports = verify_derivation(c, 2, ReferenceForm::Determinant);
  ChainConfig doubled = c;
  doubled.exchange = 2.0 * c.exchange;
  const HeisenbergRhs engine2 = heisenberg_rhs(2, build_hamiltonian(doubled));
  const E* engine2_parts[3] = {&engine2.z, &engine2.plus, &engine2.minus};

  for (int i = 0; i < 3; ++i) {
    const DerivationReport& rep = reports[i];
    CHECK_FALSE(rep.matches);
    CHECK(rep.matches_doubled_exchange);
    CHECK(rep.same_support);
    CHECK(approx_equal(rep.reference, *engine2_parts[i], 1e-12));
    const std::set<int> ratios = ratio_values(rep);
    CHECK(ratios.count(-2) == 0);
    CHECK(ratios == std::set<int>{1, 2});
  }
}

TEST_CASE("with the exchange off every reference form matches exactly") {
  ChainConfig c = probe_config();
  c.exchange = 0.0;
  for (const ReferenceForm form :
       {ReferenceForm::ComponentWise, ReferenceForm::Determinant}) {
    const auto reports = verify_derivation(c, 2, form);
    for (const DerivationReport& rep : reports) {
      CHECK(rep.matches);
      CHECK(rep.matches_doubled_exchange);
      CHECK(rep.difference.is_zero());
      CHECK(rep.summary == "matches the engine exactly");
      CHECK(ratio_values(rep) == std::set<int>{1});
    }
  }
}

TEST_CASE("reference transcription is stable under the matrix oracle") {
  // The symbolic comparison must agree with a purely numeric one: evaluate
  // reference and engine as dense matrices and compare the differences.
  const ChainConfig c = probe_config();
  const auto reports = verify_derivation(c, 2, ReferenceForm::ComponentWise);
  const double wt = 0.37;
  for (const DerivationReport& rep : reports) {
    const Eigen::MatrixXcd num_diff =
        oracle::kron_matrix(rep.reference, 3, wt) -
        oracle::kron_matrix(rep.engine, 3, wt);
    const Eigen::MatrixXcd sym_diff = oracle::kron_matrix(rep.difference, 3, wt);
    CHECK((num_diff - sym_diff).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("interior-site requirement") {
  const ChainConfig c = probe_config();
  CHECK_THROWS_AS(verify_derivation(c, 1, ReferenceForm::ComponentWise),
                  ConfigError);
  CHECK_THROWS_AS(verify_derivation(c, 3, ReferenceForm::ComponentWise),
                  ConfigError);
  ChainConfig wide = c;
  wide.sites = 5;
  CHECK_NOTHROW(verify_derivation(wide, 4, ReferenceForm::Determinant));
}

TEST_CASE("report bookkeeping") {
  const ChainConfig c = probe_config();
  const auto reports = verify_derivation(c, 2, ReferenceForm::Determinant);
  for (const DerivationReport& rep : reports) {
    CHECK(rep.site == 2);
    CHECK(rep.form == ReferenceForm::Determinant);
    CHECK_FALSE(rep.summary.empty());
    CHECK(rep.summary ==
          "matches the engine with the exchange constant doubled");
  }
  CHECK(std::string(component_name(VectorComponent::Z)) == "z");
  CHECK(std::string(component_name(VectorComponent::Plus)) == "plus");
  CHECK(std::string(component_name(VectorComponent::Minus)) == "minus");
}
