#include "spindyn/operator_expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

namespace spindyn::algebra {

namespace {

constexpr Complex kI{0.0, 1.0};

// On-site multiplication table. Each product expands to at most two terms of
// the form coeff * op (op absent = identity):
//   s+ s+ = 0           s+ s- = 1/2 + 1/2 sz    s+ sz = -s+
//   s- s+ = 1/2 - 1/2 sz  s- s- = 0             s- sz = +s-
//   sz s+ = +s+         sz s- = -s-             sz sz = 1
struct ProductPart {
  Complex coeff;
  std::optional<SiteOp> op;
};

using ProductParts = std::vector<ProductPart>;

const ProductParts& site_product(SiteOp a, SiteOp b) {
  static const ProductParts table[3][3] = {
      // a = Raise
      {/* b=Raise */ {},
       /* b=Lower */ {{0.5, std::nullopt}, {0.5, SiteOp::Z}},
       /* b=Z     */ {{-1.0, SiteOp::Raise}}},
      // a = Lower
      {/* b=Raise */ {{0.5, std::nullopt}, {-0.5, SiteOp::Z}},
       /* b=Lower */ {},
       /* b=Z     */ {{1.0, SiteOp::Lower}}},
      // a = Z
      {/* b=Raise */ {{1.0, SiteOp::Raise}},
       /* b=Lower */ {{-1.0, SiteOp::Lower}},
       /* b=Z     */ {{1.0, std::nullopt}}},
  };
  return table[static_cast<int>(a)][static_cast<int>(b)];
}

struct Branch {
  Complex coeff;
  std::map<int, SiteOp> factors;
};

// Product of two monomials: factors on distinct sites commute freely and
// merge; coinciding sites expand through the table, possibly branching.
void multiply_monomials(const Monomial& a, Complex ca, const Monomial& b,
                        Complex cb, std::vector<std::pair<Monomial, Complex>>& out) {
  std::vector<Branch> branches{{ca * cb, {}}};
  auto ia = a.factors.begin();
  auto ib = b.factors.begin();
  while (ia != a.factors.end() || ib != b.factors.end()) {
    if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
      for (auto& br : branches) br.factors.emplace(ia->first, ia->second);
      ++ia;
    } else if (ia == a.factors.end() || ib->first < ia->first) {
      for (auto& br : branches) br.factors.emplace(ib->first, ib->second);
      ++ib;
    } else {
      const int site = ia->first;
      const ProductParts& parts = site_product(ia->second, ib->second);
      std::vector<Branch> next;
      next.reserve(branches.size() * parts.size());
      for (const auto& br : branches) {
        for (const auto& part : parts) {
          Branch nb = br;
          nb.coeff *= part.coeff;
          if (part.op) nb.factors.emplace(site, *part.op);
          next.push_back(std::move(nb));
        }
      }
      branches = std::move(next);
      if (branches.empty()) return;  // product annihilated (nilpotency)
      ++ia;
      ++ib;
    }
  }
  const int phase = a.phase + b.phase;
  for (auto& br : branches) {
    out.emplace_back(Monomial{std::move(br.factors), phase}, br.coeff);
  }
}

}  // namespace

OperatorExpr OperatorExpr::identity(Complex c) {
  OperatorExpr e;
  e.add_term(Monomial{}, c);
  e.prune();
  return e;
}

OperatorExpr OperatorExpr::site(SiteOp op, int site) {
  if (site < 1) throw ConfigError("site index must be >= 1");
  OperatorExpr e;
  Monomial m;
  m.factors.emplace(site, op);
  e.add_term(m, 1.0);
  return e;
}

OperatorExpr OperatorExpr::phase(int m) {
  OperatorExpr e;
  e.add_term(Monomial{{}, m}, 1.0);
  return e;
}

OperatorExpr OperatorExpr::term(const Monomial& m, Complex c) {
  OperatorExpr e;
  e.add_term(m, c);
  e.prune();
  return e;
}

Complex OperatorExpr::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

int OperatorExpr::max_site() const {
  int n = 0;
  for (const auto& [m, c] : terms_) {
    if (!m.factors.empty()) n = std::max(n, m.factors.rbegin()->first);
  }
  return n;
}

void OperatorExpr::add_term(const Monomial& m, Complex c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void OperatorExpr::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kCoeffZeroTol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  prune();
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  prune();
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(const OperatorExpr& rhs) {
  OperatorExpr result;
  std::vector<std::pair<Monomial, Complex>> parts;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      parts.clear();
      multiply_monomials(ma, ca, mb, cb, parts);
      for (auto& [m, c] : parts) result.add_term(m, c);
    }
  }
  result.prune();
  *this = std::move(result);
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(Complex c) {
  for (auto& [m, coeff] : terms_) coeff *= c;
  prune();
  return *this;
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr result;
  for (const auto& [m, c] : terms_) {
    Monomial conj_m;
    conj_m.phase = -m.phase;
    for (const auto& [site, op] : m.factors) {
      SiteOp flipped = op == SiteOp::Raise   ? SiteOp::Lower
                       : op == SiteOp::Lower ? SiteOp::Raise
                                             : SiteOp::Z;
      conj_m.factors.emplace(site, flipped);
    }
    result.add_term(conj_m, std::conj(c));
  }
  result.prune();
  return result;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
  return a * b - b * a;
}

OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) {
  return a * b + b * a;
}

double max_coeff_delta(const OperatorExpr& a, const OperatorExpr& b) {
  double worst = 0.0;
  for (const auto& [m, c] : a.terms()) {
    worst = std::max(worst, std::abs(c - b.coefficient(m)));
  }
  for (const auto& [m, c] : b.terms()) {
    worst = std::max(worst, std::abs(c - a.coefficient(m)));
  }
  return worst;
}

bool approx_equal(const OperatorExpr& a, const OperatorExpr& b, double tol) {
  return max_coeff_delta(a, b) <= tol;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* op_token(SiteOp op) {
  switch (op) {
    case SiteOp::Raise: return "s+";
    case SiteOp::Lower: return "s-";
    case SiteOp::Z: return "sz";
  }
  return "";
}

}  // namespace

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [site, op] : m.factors) {
    if (!out.empty()) out += ' ';
    out += op_token(op);
    out += '(';
    out += std::to_string(site);
    out += ')';
  }
  if (m.phase != 0) {
    if (!out.empty()) out += ' ';
    out += "ph(";
    out += std::to_string(m.phase);
    out += ')';
  }
  return out;
}

std::string to_string(const OperatorExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    bool negative = false;
    std::string coeff_txt;
    if (c.imag() == 0.0) {
      negative = c.real() < 0.0;
      double mag = std::abs(c.real());
      if (mag != 1.0) coeff_txt = fmt_double(mag);
    } else if (c.real() == 0.0) {
      negative = c.imag() < 0.0;
      double mag = std::abs(c.imag());
      coeff_txt = (mag == 1.0) ? "i" : fmt_double(mag) + "i";
    } else {
      // Mixed complex coefficients print as a parenthesized literal and are
      // always joined with '+'.
      coeff_txt = "(" + fmt_double(c.real()) + (c.imag() < 0 ? "-" : "+") +
                  fmt_double(std::abs(c.imag())) + "i)";
    }
    std::string body = coeff_txt;
    std::string mono = to_string(m);
    if (!mono.empty()) {
      if (!body.empty()) body += ' ';
      body += mono;
    }
    if (body.empty()) body = "1";
    if (first) {
      if (negative) out += '-';
      out += body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  OperatorExpr parse() {
    OperatorExpr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor() {
    char c = peek();
    return c == '(' || c == '*' || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '.' || c == 'i' || c == 's' || c == 'p';
  }

  OperatorExpr parse_sum() {
    OperatorExpr total;
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    while (true) {
      OperatorExpr t = parse_term();
      if (negate) t *= Complex(-1.0);
      total += t;
      c = peek();
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else {
        break;
      }
    }
    return total;
  }

  OperatorExpr parse_term() {
    OperatorExpr product = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        product *= parse_factor();
      } else if (starts_factor()) {
        product *= parse_factor();  // juxtaposition is multiplication
      } else {
        break;
      }
    }
    return product;
  }

  OperatorExpr parse_factor() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      OperatorExpr inner = parse_sum();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return OperatorExpr::identity(parse_number());
    }
    if (c == 'i' && !ident_continues(pos_ + 1)) {
      ++pos_;
      return OperatorExpr::identity(Complex(0.0, 1.0));
    }
    if (c == 's') {
      char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
      SiteOp op;
      if (next == '+') {
        op = SiteOp::Raise;
      } else if (next == '-') {
        op = SiteOp::Lower;
      } else if (next == 'z') {
        op = SiteOp::Z;
      } else {
        throw ParseError("unknown operator token", start);
      }
      pos_ += 2;
      int site = parse_paren_int();
      if (site < 1) throw ParseError("site index must be >= 1", start);
      return OperatorExpr::site(op, site);
    }
    if (c == 'p') {
      if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != 'h')
        throw ParseError("unknown token", start);
      pos_ += 2;
      return OperatorExpr::phase(parse_paren_int());
    }
    throw ParseError("expected a factor", pos_);
  }

  bool ident_continues(std::size_t at) {
    return at < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[at])) || text_[at] == '_');
  }

  double parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return value;
  }

  int parse_paren_int() {
    if (peek() != '(') throw ParseError("expected '('", pos_);
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    long value = std::strtol(begin, &end, 10);
    if (end == begin) throw ParseError("expected an integer", start);
    pos_ += static_cast<std::size_t>(end - begin);
    if (peek() != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    return static_cast<int>(value);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace spindyn::algebra
