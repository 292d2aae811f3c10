#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "spindyn/common.hpp"

namespace spindyn::algebra {

using Complex = std::complex<double>;

// Coefficient magnitudes below this are treated as zero after arithmetic.
// Guards float dust in otherwise rational computations (halves, signs).
inline constexpr double kCoeffZeroTol = 1e-12;

// Single-site generators of the spin-1/2 ladder algebra. The identity is
// never stored explicitly; it is absorbed into coefficients.
enum class SiteOp : std::uint8_t { Raise, Lower, Z };

// Product of site generators -- at most one per site, keyed by 1-based site
// index -- times a drive phase e^{i m omega t} tracked symbolically through
// the integer exponent m. Time dependence never becomes numeric here.
struct Monomial {
  std::map<int, SiteOp> factors;
  int phase = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Canonical sum of monomials with complex coefficients. Every operation
// maintains canonical form: same-site products are expanded through the
// on-site multiplication table, like terms are merged, and near-zero
// coefficients are dropped. Canonicalization is therefore idempotent by
// construction; `canonicalize` below exists as the explicit fixed point.
class OperatorExpr {
 public:
  OperatorExpr() = default;  // the zero expression

  static OperatorExpr zero() { return {}; }
  static OperatorExpr identity(Complex c = 1.0);
  static OperatorExpr site(SiteOp op, int site);  // throws ConfigError if site < 1
  static OperatorExpr phase(int m);               // e^{i m omega t} times identity
  static OperatorExpr term(const Monomial& m, Complex c);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Complex>& terms() const { return terms_; }

  // Coefficient of an exact monomial key; zero if absent.
  Complex coefficient(const Monomial& m) const;

  // Largest site index appearing in any factor; 0 for site-free expressions.
  int max_site() const;

  OperatorExpr& operator+=(const OperatorExpr& rhs);
  OperatorExpr& operator-=(const OperatorExpr& rhs);
  OperatorExpr& operator*=(const OperatorExpr& rhs);
  OperatorExpr& operator*=(Complex c);

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(OperatorExpr a, const OperatorExpr& b) { return a *= b; }
  friend OperatorExpr operator*(OperatorExpr a, Complex c) { return a *= c; }
  friend OperatorExpr operator*(Complex c, OperatorExpr a) { return a *= c; }
  friend OperatorExpr operator-(OperatorExpr a) { return a *= Complex(-1.0); }

  // Conjugate transpose: swaps Raise <-> Lower, conjugates coefficients,
  // negates phase exponents.
  OperatorExpr adjoint() const;

  // Exact structural equality (same monomials, bit-identical coefficients).
  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

 private:
  void add_term(const Monomial& m, Complex c);  // accumulate without pruning
  void prune();                                 // drop |coeff| < kCoeffZeroTol

  std::map<Monomial, Complex> terms_;
};

// Explicit canonicalization entry point. Expressions are canonical by
// construction, so this is the identity; it exists so the fixed-point
// property is a named, testable operation.
inline OperatorExpr canonicalize(OperatorExpr e) { return e; }

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b);

// True when all per-monomial coefficient differences are within tol.
bool approx_equal(const OperatorExpr& a, const OperatorExpr& b,
                  double tol = kCoeffZeroTol);

// Largest per-monomial coefficient difference |a - b|.
double max_coeff_delta(const OperatorExpr& a, const OperatorExpr& b);

// Deterministic text form in the grammar of parse_expr, e.g.
// "0.5 + 0.5 sz(1)" or "2 s+(1) s-(2) ph(-1)". Zero prints as "0".
std::string to_string(const OperatorExpr& e);
std::string to_string(const Monomial& m);  // factors and phase only, no coefficient

// Reports a syntax or validity error in an operator-expression string,
// carrying the byte offset where the problem was found.
struct ParseError : ConfigError {
  ParseError(const std::string& what, std::size_t pos)
      : ConfigError(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

// Grammar: terms joined by +/-; a term is a juxtaposed (or '*'-joined)
// product of factors; factors are decimal literals, the imaginary unit `i`,
// site operators `s+(k)` `s-(k)` `sz(k)`, phase tokens `ph(m)`, or
// parenthesized subexpressions such as complex literals `(a+bi)`.
// Whitespace-insensitive. The result is canonical, so printing and
// reparsing is a fixed point.
OperatorExpr parse_expr(const std::string& text);

}  // namespace spindyn::algebra
