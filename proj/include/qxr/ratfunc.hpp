#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "qxr/multipoly.hpp"

namespace qxr {

// Fraction of two MultiPoly with nonzero denominator. Normalization is
// deliberately light: sign (leading denominator coefficient positive),
// integer content of the denominator, and any shared monomial factor.
// Equality is decided by cross-multiplication, so no multivariate gcd is
// needed anywhere.
class RatFunc {
 public:
  RatFunc() : num_(), den_(MultiPoly::constant(1)) {}
  RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(1)) { normalize(); }
  RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
    normalize();
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by the zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }

  // a/b == c/d  iff  a*d - c*b == 0 as a polynomial.
  friend bool rf_equal(const RatFunc& a, const RatFunc& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return rf_equal(a, b); }

  bool defined_at(const std::array<Rational, 4>& x) const { return !den_.eval(x).is_zero(); }

  Rational eval(const std::array<Rational, 4>& x) const {
    const Rational d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("RatFunc: denominator vanishes at evaluation point");
    return num_.eval(x) / d;
  }

  std::string to_string() const {
    if (den_ == MultiPoly::constant(1)) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(1);
      return;
    }
    const Monomial shared = [&] {
      Monomial a = num_.min_exponents(), b = den_.min_exponents(), r;
      for (int i = 0; i < Monomial::kVars; ++i) r.e[i] = std::min(a.e[i], b.e[i]);
      return r;
    }();
    if (!shared.is_one()) {
      num_ = num_.shift_down(shared);
      den_ = den_.shift_down(shared);
    }
    Rational scale = den_.content();
    if (den_.lead_coeff().sign() < 0) scale = -scale;
    if (scale != Rational(1)) {
      const Rational inv = scale.inv();
      num_ *= inv;
      den_ *= inv;
    }
  }

  MultiPoly num_;
  MultiPoly den_;
};

enum class RfOp { add, sub, mul, div };

inline RatFunc rf_arith(RfOp op, const RatFunc& a, const RatFunc& b) {
  switch (op) {
    case RfOp::add: return a + b;
    case RfOp::sub: return a - b;
    case RfOp::mul: return a * b;
    case RfOp::div: return a / b;
  }
  throw std::logic_error("rf_arith: bad op");
}

}  // namespace qxr
