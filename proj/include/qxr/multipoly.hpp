#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "qxr/monomial.hpp"
#include "qxr/rational.hpp"

namespace qxr {

// Sparse exact polynomial in (m1, m2, m3, t) over Rational. The term map is
// ordered leading-term-first, so the stored form is canonical: no zero
// coefficients, deterministic iteration, deterministic printing.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  MultiPoly() = default;

  static MultiPoly constant(Rational c) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
  }
  static MultiPoly variable(int index, std::uint32_t exp = 1) {
    if (index < 0 || index >= Monomial::kVars) throw std::invalid_argument("MultiPoly: bad variable index");
    Monomial m;
    m.e[index] = exp;
    return from_term(m, Rational(1));
  }
  static MultiPoly from_term(const Monomial& m, Rational c) {
    MultiPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned e) const;

  // Formal partial derivative with respect to t.
  MultiPoly diff_t() const;

  // Highest t-exponent present; -1 for the zero polynomial.
  int degree_t() const;

  // Coefficient of t^k, as a polynomial in (m1, m2, m3).
  MultiPoly coeff_of_t(int k) const;

  // Exact evaluation at (m1, m2, m3, t).
  Rational eval(const std::array<Rational, 4>& x) const;

  // Leading coefficient/monomial in the graded-lex order; zero poly throws.
  const Monomial& lead_monomial() const;
  const Rational& lead_coeff() const;

  // gcd of coefficient numerators over lcm of denominators, > 0 (0 for zero).
  Rational content() const;

  // Componentwise minimum exponent vector over all terms.
  Monomial min_exponents() const;

  // Divide every term by the given monomial; caller guarantees divisibility.
  MultiPoly shift_down(const Monomial& m) const;

  std::string to_string() const;
  static MultiPoly parse(const std::string& text);

 private:
  TermMap terms_;
};

// Spec-facing free functions.
inline MultiPoly add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
inline MultiPoly sub(const MultiPoly& a, const MultiPoly& b) { return a - b; }
inline MultiPoly mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }
inline MultiPoly poly_diff_t(const MultiPoly& p) { return p.diff_t(); }
inline Rational eval_rational(const MultiPoly& p, const std::array<Rational, 4>& x) { return p.eval(x); }

struct LeadingTermT {
  int degree;
  MultiPoly coeff;
};

// Highest power of t and the (m1,m2,m3)-polynomial multiplying it.
inline LeadingTermT leading_term_t(const MultiPoly& p) {
  if (p.is_zero()) throw std::domain_error("leading_term_t: no leading term of the zero polynomial");
  const int d = p.degree_t();
  return LeadingTermT{d, p.coeff_of_t(d)};
}

}  // namespace qxr
