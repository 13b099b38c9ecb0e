#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qxr/elimination.hpp"
#include "qxr/multipoly.hpp"

using namespace qxr;

namespace {

// Small deterministic generator for random polynomials and points.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) { return lo + long(next() % std::uint64_t(hi - lo + 1)); }
  Rational rational() { return Rational(range(-50, 50), range(1, 20)); }
  std::array<Rational, 4> point() {
    return {Rational(range(-1000000, 1000000), range(1, 1000000)),
            Rational(range(-1000000, 1000000), range(1, 1000000)),
            Rational(range(-1000000, 1000000), range(1, 1000000)),
            Rational(range(-1000000, 1000000), range(1, 1000000))};
  }
  MultiPoly poly(int max_terms = 6, std::uint32_t max_exp = 4) {
    MultiPoly p;
    const int n = int(range(1, max_terms));
    for (int i = 0; i < n; ++i) {
      Monomial m;
      for (int v = 0; v < 4; ++v) m.e[v] = std::uint32_t(range(0, long(max_exp)));
      p += MultiPoly::from_term(m, rational());
    }
    return p;
  }
};

}  // namespace

TEST_CASE("rational invariants") {
  const Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(0).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1).operator/=(Rational(0)), std::domain_error);
  CHECK(Rational::from_string("-14/21") == Rational(-2, 3));
  CHECK(Rational(3, 7).pow(3) == Rational(27, 343));
}

TEST_CASE("additive identity and difference of squares") {
  Rng rng(7);
  const MultiPoly p = rng.poly();
  CHECK(add(p, MultiPoly()) == p);

  const MultiPoly lhs = mul(dmu(1, 2), mu(1) + mu(2));
  CHECK(lhs == mu(1) * mu(1) - mu(2) * mu(2));
}

TEST_CASE("ring laws on random triples") {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const MultiPoly a = rng.poly(), b = rng.poly(), c = rng.poly();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("evaluation is a ring homomorphism (100 random points)") {
  Rng rng(13);
  const MultiPoly a = rng.poly(8), b = rng.poly(8);
  for (int i = 0; i < 100; ++i) {
    const auto x = rng.point();
    CHECK(mul(a, b).eval(x) == a.eval(x) * b.eval(x));
    CHECK(add(a, b).eval(x) == a.eval(x) + b.eval(x));
    CHECK(sub(a, b).eval(x) == a.eval(x) - b.eval(x));
  }
}

TEST_CASE("formal t-derivative") {
  const MultiPoly t = tpoly();
  CHECK(poly_diff_t(t.pow(3)) == MultiPoly::constant(3) * t.pow(2));

  const MultiPoly p = mu(1).pow(2) * t.pow(2) + mu(2);
  CHECK(poly_diff_t(p) == MultiPoly::constant(2) * mu(1).pow(2) * t);

  Rng rng(17);
  for (int i = 0; i < 25; ++i) {
    const MultiPoly a = rng.poly(), b = rng.poly();
    CHECK(poly_diff_t(a * b) == poly_diff_t(a) * b + a * poly_diff_t(b));
  }
}

TEST_CASE("leading term in t") {
  const MultiPoly p = MultiPoly::constant(2) * mu(1) * tpoly().pow(2) + tpoly();
  const auto lt = leading_term_t(p);
  CHECK(lt.degree == 2);
  CHECK(lt.coeff == MultiPoly::constant(2) * mu(1));
  CHECK_THROWS_AS(leading_term_t(MultiPoly()), std::domain_error);
}

TEST_CASE("evaluation spot checks from the leading-coefficient formulas") {
  const std::array<Rational, 4> pt{1, 2, 4, 0};
  CHECK((mu(1) * mu(1) - mu(2) * mu(2)).eval({3, 1, 0, 0}) == Rational(8));

  const MultiPoly p1_lead =
      MultiPoly::constant(-2) * dmu(1, 2).pow(4) *
      (MultiPoly::constant(3) * dmu(1, 3).pow(2) + MultiPoly::constant(3) * dmu(2, 3).pow(2) +
       dmu(1, 2).pow(2));
  CHECK(p1_lead.eval(pt) == Rational(-80));

  const MultiPoly q_lead =
      MultiPoly::constant(2) * dmu(1, 3) * dmu(1, 2).pow(3) *
      (dmu(1, 3).pow(2) + MultiPoly::constant(3) * dmu(1, 2).pow(2) +
       MultiPoly::constant(3) * dmu(2, 3).pow(2));
  CHECK(q_lead.eval(pt) == Rational(144));
}

TEST_CASE("cubic-sum identities hold exactly") {
  const auto checks = check_cubic_sum_identities();
  REQUIRE(checks.size() == 3);
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.pass);
  }

  // Spot value of identity (c) at mu = (1,2,4).
  const std::array<Rational, 4> pt{1, 2, 4, 0};
  const MultiPoly lhs = dmu(3, 2).pow(3) + dmu(2, 1).pow(3) + dmu(1, 3).pow(3);
  const MultiPoly rhs = MultiPoly::constant(3) * dmu(1, 2) * dmu(1, 3) * dmu(2, 3);
  CHECK(lhs.eval(pt) == Rational(-18));
  CHECK(rhs.eval(pt) == Rational(-18));
}

TEST_CASE("canonical text round-trips") {
  CHECK(MultiPoly().to_string() == "0");
  CHECK(MultiPoly::parse("0").is_zero());

  const MultiPoly p = MultiPoly::constant(2) * mu(1).pow(2) * tpoly() - MultiPoly::constant(3) * mu(2);
  CHECK(MultiPoly::parse(p.to_string()) == p);
  CHECK(MultiPoly::parse("2*m1^2*t - 3*m2") == p);
  CHECK(MultiPoly::parse("-1/2*m3 + t^2") ==
        tpoly().pow(2) - MultiPoly::constant(Rational(1, 2)) * mu(3));

  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const MultiPoly a = rng.poly(10, 6);
    CHECK(MultiPoly::parse(a.to_string()) == a);
  }
}

TEST_CASE("canonical order is graded lexicographic, m1 > m2 > m3 > t") {
  const MultiPoly p = mu(3) + mu(1) + tpoly() + mu(2) + mu(1) * mu(1);
  CHECK(p.to_string() == "1*m1^2 + 1*m1 + 1*m2 + 1*m3 + 1*t");
}
