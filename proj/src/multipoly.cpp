#include "qxr/multipoly.hpp"

#include <cctype>
#include <sstream>

namespace qxr {

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const Monomial m = ma * mb;
      Rational c = ca * cb;
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        r.terms_.emplace(m, std::move(c));
      } else {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    if (e >>= 1u) base = base * base;
  }
  return r;
}

MultiPoly MultiPoly::diff_t() const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) {
    const auto k = m.e[Monomial::kT];
    if (k == 0) continue;
    Monomial d = m;
    d.e[Monomial::kT] = k - 1;
    r.terms_.emplace(d, c * Rational(long(k)));
  }
  return r;
}

int MultiPoly::degree_t() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, int(m.e[Monomial::kT]));
  return d;
}

MultiPoly MultiPoly::coeff_of_t(int k) const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) {
    if (int(m.e[Monomial::kT]) != k) continue;
    Monomial d = m;
    d.e[Monomial::kT] = 0;
    r.terms_.emplace(d, c);
  }
  return r;
}

Rational MultiPoly::eval(const std::array<Rational, 4>& x) const {
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < Monomial::kVars; ++i)
      if (m.e[i]) term *= x[i].pow(m.e[i]);
    acc += term;
  }
  return acc;
}

const Monomial& MultiPoly::lead_monomial() const {
  if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading monomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::lead_coeff() const {
  if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading coefficient");
  return terms_.begin()->second;
}

Rational MultiPoly::content() const {
  Rational g(0);
  for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
  return g;
}

Monomial MultiPoly::min_exponents() const {
  if (terms_.empty()) return Monomial{};
  Monomial r = terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < Monomial::kVars; ++i) r.e[i] = std::min(r.e[i], m.e[i]);
  return r;
}

MultiPoly MultiPoly::shift_down(const Monomial& m) const {
  MultiPoly r;
  for (const auto& [mm, c] : terms_) r.terms_.emplace(mm / m, c);
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c.sign() < 0;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    out << c.abs().to_string();
    for (int i = 0; i < Monomial::kVars; ++i) {
      if (m.e[i] == 0) continue;
      out << "*" << variable_name(i);
      if (m.e[i] > 1) out << "^" << m.e[i];
    }
  }
  return out.str();
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skip_ws();
    return s[i++];
  }

  std::string take_digits() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw std::invalid_argument("MultiPoly::parse: expected digits near '" + s.substr(start, 8) + "'");
    return s.substr(start, i - start);
  }
};

int parse_variable(Lexer& lx) {
  char c = lx.take();
  if (c == 't') return Monomial::kT;
  if (c == 'm' && lx.i < lx.s.size()) {
    char d = lx.s[lx.i];
    if (d >= '1' && d <= '3') {
      ++lx.i;
      return d - '1';
    }
  }
  throw std::invalid_argument("MultiPoly::parse: expected variable");
}

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text) {
  Lexer lx{text};
  MultiPoly result;
  if (lx.eof()) throw std::invalid_argument("MultiPoly::parse: empty input");
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.take();
      sign = (c == '-') ? -1 : 1;
    } else if (!first) {
      throw std::invalid_argument("MultiPoly::parse: expected '+' or '-' between terms");
    }
    first = false;

    Rational coef(1);
    bool saw_coef = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      std::string numstr = lx.take_digits();
      if (lx.peek() == '/') {
        lx.take();
        numstr += "/" + lx.take_digits();
      }
      coef = Rational::from_string(numstr);
      saw_coef = true;
    }

    Monomial m;
    bool expect_factor = !saw_coef;
    while (true) {
      if (saw_coef || !expect_factor) {
        if (lx.peek() != '*') break;
        lx.take();
      }
      expect_factor = false;
      saw_coef = true;  // after the first factor, further ones need '*'
      int var = parse_variable(lx);
      std::uint32_t exp = 1;
      if (lx.peek() == '^') {
        lx.take();
        exp = std::uint32_t(std::stoul(lx.take_digits()));
      }
      m.e[var] += exp;
    }

    if (sign < 0) coef = -coef;
    result += MultiPoly::from_term(m, coef);
  }
  return result;
}

}  // namespace qxr
