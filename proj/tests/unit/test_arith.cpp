#include <doctest.h>
#include <gmpxx.h>

#include <map>

#include "gen.hpp"
#include "snforge/error.hpp"
#include "snforge/poly.hpp"
#include "snforge/ratfunc.hpp"
#include "snforge/serialize.hpp"

using namespace snforge;
using snforge::testing::Gen;
using snforge::testing::kQ;

namespace {

Poly P(const std::string& text, std::size_t nvars = 1, Field f = kQ) {
  return io::parse_element(Ring::polynomial(f, nvars), text).poly();
}

FieldElement q(long n, long d = 1) { return FieldElement(kQ, mpq_class(n, d)); }

// Dense coefficients of a univariate polynomial, index = degree.
std::vector<FieldElement> dense(const Poly& p) {
  std::vector<FieldElement> c(p.degree() + 1, FieldElement::zero(p.field()));
  for (const auto& [k, v] : p.terms()) c[Poly::exponent(k, 0)] = v;
  return c;
}

FieldElement horner(const std::vector<FieldElement>& c, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.field());
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Synthetic division by (x - r); assumes r is a root.
std::vector<FieldElement> deflate(const std::vector<FieldElement>& c, const FieldElement& r) {
  std::vector<FieldElement> out(c.size() - 1, FieldElement::zero(r.field()));
  FieldElement carry = FieldElement::zero(r.field());
  for (std::size_t i = c.size() - 1; i >= 1; --i) {
    carry = c[i] + carry * r;
    out[i - 1] = carry;
  }
  return out;
}

// Integer roots in [-bound, bound] with multiplicities, found by search.
std::map<long, int> integer_roots(const Poly& p, long bound) {
  std::map<long, int> roots;
  for (long r = -bound; r <= bound; ++r) {
    std::vector<FieldElement> c = dense(p);
    while (c.size() > 1 && horner(c, q(r)).is_zero()) {
      ++roots[r];
      c = deflate(c, q(r));
    }
  }
  return roots;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("rational and prime field arithmetic") {
    CHECK(q(1, 2) + q(1, 3) == q(5, 6));
    CHECK(q(2, 4).to_string() == "1/2");
    CHECK(FieldElement::parse(kQ, "-6/8") == q(-3, 4));
    CHECK_THROWS_AS(q(0).inverse(), DomainError);
    CHECK_THROWS_AS(Field::prime(10), DomainError);
    const Field f7 = Field::prime(7);
    CHECK(FieldElement(f7, 10L) == FieldElement(f7, 3L));
    CHECK(FieldElement(f7, -1L).to_string() == "6");
    CHECK(FieldElement(f7, 3L).inverse() == FieldElement(f7, 5L));
    CHECK(q(4, 9).sqrt() == q(2, 3));
    CHECK_FALSE(q(2).sqrt().has_value());
    CHECK_THROWS(FieldElement::parse(kQ, "1/0"));
    CHECK_THROWS(FieldElement::parse(kQ, "abc"));
  }

  TEST_CASE("prime field inverses agree with Fermat's little theorem") {
    Gen g(11);
    const std::uint64_t p = 10007;
    const Field f = Field::prime(p);
    for (int i = 0; i < 300; ++i) {
      const long v = g.integer(1, static_cast<long>(p) - 1);
      mpz_class expected;
      mpz_class base(v), mod(static_cast<unsigned long>(p));
      mpz_powm_ui(expected.get_mpz_t(), base.get_mpz_t(), p - 2, mod.get_mpz_t());
      CHECK(FieldElement(f, v).inverse() == FieldElement(f, mpq_class(expected)));
    }
  }

  TEST_CASE("field axioms on random elements") {
    Gen g(12);
    for (Field f : {kQ, Field::prime(10007), Field::prime(3)}) {
      for (int i = 0; i < 1000; ++i) {
        const FieldElement a = g.scalar(f, 50), b = g.scalar(f, 50), c = g.scalar(f, 50);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + b == b + a);
        REQUIRE(a - a == FieldElement::zero(f));
        if (!a.is_zero()) REQUIRE(a * a.inverse() == FieldElement::one(f));
        if (auto r = (a * a).sqrt()) REQUIRE(*r * *r == a * a);
      }
    }
  }

  TEST_CASE("polynomial printing and parsing round trip") {
    Gen g(13);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int i = 0; i < 200; ++i) {
        const Poly p = g.poly(kQ, n, 4);
        REQUIRE(P(p.to_string(), n) == p);
      }
    CHECK(P("(x+1)^3") == P("x^3 + 3*x^2 + 3*x + 1"));
    CHECK(P("x*y - y*x", 2).is_zero());
    CHECK_THROWS_AS(P("x +"), InputError);
  }

  TEST_CASE("gcd examples") {
    CHECK(gcd(P("3*x^2 + 6"), Poly(kQ, 1)) == P("x^2 + 2"));
    CHECK(gcd(P("x^2 - 1"), P("x^2 - 2*x + 1")) == P("x - 1"));
    const Poly a = P("x*y + y", 2), b = P("x^2 - 1", 2);
    const Poly d = gcd(a, b);
    CHECK(d == P("x + 1", 2));
    CHECK(divide_exact(a, d).has_value());
    CHECK(divide_exact(b, d).has_value());
  }

  TEST_CASE("univariate gcd against common integer roots") {
    Gen g(14);
    for (int i = 0; i < 150; ++i) {
      // Products of random linear factors with small integer roots.
      Poly a = Poly::constant(kQ, 1, g.nonzero_scalar(kQ)), b = Poly::constant(kQ, 1, g.nonzero_scalar(kQ));
      for (long k = g.integer(0, 4); k > 0; --k) a = a * P("x - " + std::to_string(g.integer(-4, 4)));
      for (long k = g.integer(0, 4); k > 0; --k) b = b * P("x - " + std::to_string(g.integer(-4, 4)));
      const auto ra = integer_roots(a, 4), rb = integer_roots(b, 4);
      Poly expected = Poly::constant(kQ, 1, 1);
      for (const auto& [r, m] : ra)
        if (rb.count(r))
          for (int e = 0; e < std::min(m, rb.at(r)); ++e) expected = expected * P("x - " + std::to_string(r));
      REQUIRE(gcd(a, b) == expected);
    }
  }

  TEST_CASE("gcd divides its inputs and scales with a common factor") {
    Gen g(15);
    for (std::size_t n = 1; n <= 2; ++n)
      for (int i = 0; i < 120; ++i) {
        const Poly a = g.nonzero_poly(kQ, n, 3), b = g.poly(kQ, n, 3), r = g.nonzero_poly(kQ, n, 2);
        const Poly d = gcd(a, b);
        REQUIRE(divide_exact(a, d).has_value());
        if (!b.is_zero()) REQUIRE(divide_exact(b, d).has_value());
        REQUIRE(gcd(a * r, b * r) == r.monic() * d);
      }
  }

  TEST_CASE("division with remainder and extended Euclid") {
    Gen g(16);
    for (Field f : {kQ, Field::prime(101)}) {
      for (int i = 0; i < 300; ++i) {
        const Poly a = g.poly(f, 1, 6), b = g.nonzero_poly(f, 1, 3);
        const auto [qt, rm] = divmod(a, b);
        REQUIRE(qt * b + rm == a);
        REQUIRE(rm.degree() < b.degree());
        const Xgcd x = xgcd(a, b);
        REQUIRE(x.s * a + x.t * b == x.gcd);
        REQUIRE(x.gcd == gcd(a, b));
      }
    }
  }

  TEST_CASE("exact division, derivative, powers, substitution") {
    Gen g(17);
    for (int i = 0; i < 200; ++i) {
      const Poly a = g.poly(kQ, 2, 3), b = g.nonzero_poly(kQ, 2, 2);
      REQUIRE(divide_exact(a * b, b) == a);
      REQUIRE(derivative(a * b, 0) == derivative(a, 0) * b + a * derivative(b, 0));
      REQUIRE(pow(b, 3) == b * b * b);
      // Substituting y -> x + 1 agrees with evaluating at points on the line.
      const Poly sub = substitute(a, {P("x", 2), P("x + 1", 2)});
      for (long t = -2; t <= 2; ++t)
        REQUIRE(sub.evaluate({q(t), q(0)}) == a.evaluate({q(t), q(t + 1)}));
    }
    CHECK_FALSE(divide_exact(P("x^2 + 1"), P("x - 1")).has_value());
  }

  TEST_CASE("monic square roots") {
    Gen g(18);
    for (int i = 0; i < 200; ++i) {
      const Poly p = g.nonzero_poly(kQ, 1, 4);
      REQUIRE(monic_sqrt((p * p).monic()) == p.monic());
    }
    CHECK_FALSE(monic_sqrt(P("x^2 + 1")).has_value());
    CHECK_FALSE(monic_sqrt(P("x^3")).has_value());
  }

  TEST_CASE("rational functions normalize and form a field") {
    const RatFunc r(P("x^2 - 1"), P("2*x - 2"));
    CHECK(r.num() == P("1/2*x + 1/2"));
    CHECK(r.den() == P("1"));
    CHECK(r.is_polynomial());
    Gen g(19);
    for (int i = 0; i < 300; ++i) {
      const RatFunc a(g.poly(kQ, 1, 3), g.nonzero_poly(kQ, 1, 2));
      const RatFunc b(g.poly(kQ, 1, 3), g.nonzero_poly(kQ, 1, 2));
      REQUIRE((a + b) - b == a);
      if (!b.is_zero()) REQUIRE((a * b) / b == a);
      REQUIRE(a.den().leading_coefficient().is_one());
      REQUIRE(gcd(a.num(), a.den()).is_constant());
    }
  }
}
