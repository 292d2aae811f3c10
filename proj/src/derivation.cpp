#include "spindyn/derivation.hpp"

namespace spindyn::algebra {

namespace {

constexpr Complex kI{0.0, 1.0};

using E = OperatorExpr;

E neighbour_sum(SiteOp op, int k) {
  return E::site(op, k + 1) + E::site(op, k - 1);
}

void require_interior(const ChainConfig& config, int k) {
  config.validate();
  if (k < 2 || k > config.sites - 1)
    throw ConfigError("site must be interior: 2 <= k <= N-1 (k=" +
                      std::to_string(k) + ", N=" + std::to_string(config.sites) +
                      ")");
}

// Per-component reference equations, transcribed as printed. The z and plus
// equations carry anticommutators with a relative minus sign; the printed
// minus equation joins its anticommutators with a plus sign instead -- that
// sign is kept verbatim here and surfaced by the comparison.
E component_wise_rhs(const ChainConfig& c, int k, VectorComponent comp) {
  const Complex omega0 = c.omega0;
  const Complex rabi = c.rabi;
  const Complex j = c.exchange;
  const E sk_m = E::site(SiteOp::Lower, k);
  const E sk_p = E::site(SiteOp::Raise, k);
  const E sk_z = E::site(SiteOp::Z, k);
  const E sum_m = neighbour_sum(SiteOp::Lower, k);
  const E sum_p = neighbour_sum(SiteOp::Raise, k);
  const E sum_z = neighbour_sum(SiteOp::Z, k);

  switch (comp) {
    case VectorComponent::Z:
      return Complex(2.0) * kI * rabi *
                 (E::phase(-1) * sk_p - E::phase(+1) * sk_m) +
             Complex(2.0) * kI * j *
                 (anticommutator(sk_m, sum_p) - anticommutator(sk_p, sum_m));
    case VectorComponent::Plus:
      return kI * omega0 * sk_p + kI * rabi * E::phase(+1) * sk_z +
             kI * j * (anticommutator(sk_p, sum_z) - anticommutator(sk_z, sum_p));
    case VectorComponent::Minus:
      return Complex(-1.0) * kI * omega0 * sk_m -
             kI * rabi * E::phase(-1) * sk_z -
             kI * j * (anticommutator(sk_m, sum_z) + anticommutator(sk_z, sum_m));
  }
  return E::zero();
}

// Determinant (cross-product) form. The effective-field components are
//   G- = rabi ph(-1) - 2J (s-(k+1)+s-(k-1))
//   G+ = rabi ph(+1) - 2J (s+(k+1)+s+(k-1))
//   Gz = -omega0    - 2J (sz(k+1)+sz(k-1))
// and the expansion uses the cross products of the unnormalized transverse
// basis vectors e+- = ex +- i ey:
//   e- x ez = -i e-,   ez x e+ = -i e+,   e+ x e- = -2i ez,
// with every operator product replaced by half the anticommutator.
E determinant_rhs(const ChainConfig& c, int k, VectorComponent comp) {
  const Complex rabi = c.rabi;
  const Complex two_j = 2.0 * c.exchange;
  const E sk_m = E::site(SiteOp::Lower, k);
  const E sk_p = E::site(SiteOp::Raise, k);
  const E sk_z = E::site(SiteOp::Z, k);
  const E g_m = rabi * E::phase(-1) - two_j * neighbour_sum(SiteOp::Lower, k);
  const E g_p = rabi * E::phase(+1) - two_j * neighbour_sum(SiteOp::Raise, k);
  const E g_z =
      E::identity(-c.omega0) - two_j * neighbour_sum(SiteOp::Z, k);

  switch (comp) {
    case VectorComponent::Minus:  // coefficient of e+
      return Complex(0.5) * kI *
             (anticommutator(sk_m, g_z) - anticommutator(sk_z, g_m));
    case VectorComponent::Plus:  // coefficient of e-
      return Complex(-0.5) * kI *
             (anticommutator(sk_p, g_z) - anticommutator(sk_z, g_p));
    case VectorComponent::Z:
      return Complex(-1.0) * kI *
             (anticommutator(sk_m, g_p) - anticommutator(sk_p, g_m));
  }
  return E::zero();
}

bool support_equal(const E& a, const E& b) {
  if (a.term_count() != b.term_count()) return false;
  auto ita = a.terms().begin();
  auto itb = b.terms().begin();
  for (; ita != a.terms().end(); ++ita, ++itb) {
    if (!(ita->first == itb->first)) return false;
  }
  return true;
}

const E& pick(const HeisenbergRhs& rhs, VectorComponent comp) {
  switch (comp) {
    case VectorComponent::Z: return rhs.z;
    case VectorComponent::Plus: return rhs.plus;
    case VectorComponent::Minus: return rhs.minus;
  }
  return rhs.z;
}

}  // namespace

const char* component_name(VectorComponent c) {
  switch (c) {
    case VectorComponent::Z: return "z";
    case VectorComponent::Plus: return "plus";
    case VectorComponent::Minus: return "minus";
  }
  return "?";
}

OperatorExpr reference_rhs(const ChainConfig& config, int k,
                           VectorComponent component, ReferenceForm form) {
  require_interior(config, k);
  return form == ReferenceForm::ComponentWise
             ? component_wise_rhs(config, k, component)
             : determinant_rhs(config, k, component);
}

std::array<DerivationReport, 3> verify_derivation(const ChainConfig& config,
                                                  int k, ReferenceForm form) {
  require_interior(config, k);

  ChainConfig lab = config;
  lab.frame = Frame::Lab;
  ChainConfig doubled = lab;
  doubled.exchange *= 2.0;

  const HeisenbergRhs engine = heisenberg_rhs(k, build_hamiltonian(lab));
  const HeisenbergRhs engine2j = heisenberg_rhs(k, build_hamiltonian(doubled));

  std::array<DerivationReport, 3> reports;
  const VectorComponent order[3] = {VectorComponent::Z, VectorComponent::Plus,
                                    VectorComponent::Minus};
  for (int idx = 0; idx < 3; ++idx) {
    const VectorComponent comp = order[idx];
    DerivationReport& rep = reports[idx];
    rep.component = comp;
    rep.site = k;
    rep.form = form;
    rep.engine = pick(engine, comp);
    rep.reference = reference_rhs(lab, k, comp, form);
    rep.difference = rep.reference - rep.engine;
    rep.matches = rep.difference.is_zero();
    rep.same_support = support_equal(rep.reference, rep.engine);
    rep.matches_doubled_exchange =
        approx_equal(rep.reference, pick(engine2j, comp));
    for (const auto& [mono, ce] : rep.engine.terms()) {
      const Complex cr = rep.reference.coefficient(mono);
      if (std::abs(cr) >= kCoeffZeroTol) rep.coefficient_ratio[mono] = cr / ce;
    }
    if (rep.matches) {
      rep.summary = "matches the engine exactly";
    } else if (rep.matches_doubled_exchange) {
      rep.summary = "matches the engine with the exchange constant doubled";
    } else {
      rep.summary = "differs from the engine even after doubling the exchange";
    }
  }
  return reports;
}

}  // namespace spindyn::algebra
