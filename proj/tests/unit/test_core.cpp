#include <doctest.h>

#include "gen.hpp"
#include "snforge/backends.hpp"
#include "snforge/error.hpp"
#include "snforge/serialize.hpp"

using namespace snforge;
using snforge::testing::Gen;
using snforge::testing::kQ;

namespace {

FieldElement q(long n) { return FieldElement(kQ, n); }

std::vector<TensorElement> identity_images(const AlgebraPtr& r, const RingPtr& s) {
  std::vector<TensorElement> out;
  for (std::size_t k = 0; k < r->dimension(); ++k) out.push_back(TensorElement::basis(r, s, k));
  return out;
}

TensorElement mat(const RingPtr& s, std::size_t n, const std::vector<std::string>& entries) {
  const AlgebraPtr r = matrix_algebra(s->base_field(), n);
  TensorElement a = TensorElement::zero(r, s);
  for (std::size_t i = 0; i < n * n; ++i) a = a + TensorElement::pure(r, s, r->basis_vector(i), io::parse_element(s, entries[i]));
  return a;
}

SolveRequest request(const HomSpec& phi, std::uint64_t seed = 1) {
  SolveRequest req;
  req.phi = phi;
  req.seed = seed;
  return req;
}

// c' c^-1 for two conjugators of the same phi must lie in 1 (x) S.
void require_same_up_to_center(const TensorElement& c, const TensorElement& c2) {
  const auto inv = tensor_invert(c);
  REQUIRE(inv.has_value());
  const auto s = unit_part(*inv * c2);
  REQUIRE(s.has_value());
  REQUIRE(ring_is_unit(*s));
}

void require_conjugates(const HomSpec& phi, const TensorElement& c) {
  const auto inv = tensor_invert(c);
  REQUIRE(inv.has_value());
  for (std::size_t k = 0; k < phi.r->dimension(); ++k)
    REQUIRE(c * TensorElement::basis(phi.r, phi.s, k) * *inv == phi.images[k]);
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("dual systems select one coordinate") {
    const AlgebraPtr f = field_algebra(kQ);
    const DualSystem df = dual_system(f, 0);
    REQUIRE(df.pairs.size() >= 1);
    Vec total = f->zero_vector();
    for (const auto& [w, z] : df.pairs) total[0] = total[0] + f->multiply(f->multiply(w, f->unit()), z)[0];
    CHECK(total == f->unit());
    // M_2, coordinate e11: sum_j e_j1 e_kl e_1j = delta_k1 delta_l1.
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    for (const AlgebraPtr& r : {m2, matrix_algebra(kQ, 3), quaternion_algebra(q(-1), q(-1))})
      for (std::size_t i = 0; i < r->dimension(); ++i) {
        const DualSystem d = dual_system(r, i);
        for (std::size_t k = 0; k < r->dimension(); ++k) {
          Vec acc = r->zero_vector();
          for (const auto& [w, z] : d.pairs) {
            const Vec t = r->multiply(r->multiply(w, r->basis_vector(k)), z);
            for (std::size_t m = 0; m < acc.size(); ++m) acc[m] = acc[m] + t[m];
          }
          REQUIRE(acc == (k == i ? r->unit() : r->zero_vector()));
        }
      }
    CHECK_THROWS_AS(dual_system(diagonal_algebra(kQ, 2), 0), DomainError);
  }

  TEST_CASE("coefficients of the identity homomorphism") {
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const RingPtr s = Ring::field(kQ);
    const HomSpec phi = require_hom(m2, s, identity_images(m2, s));
    const CoefficientTuple ct = extract_coefficients(phi);
    CHECK(ct.c[0] == TensorElement::one(m2, s));
    CHECK(ct.c[3] == TensorElement::one(m2, s));
    CHECK(ct.c[1].is_zero());
    CHECK(ct.c[2].is_zero());
    const TensorElement b = witness(phi, ct, 0, 0);
    CHECK((b * ct.c[0]) == TensorElement::from_s(m2, ct.s[0][0]));
    CHECK((witness(phi, ct, 1, 0) * ct.c[1]).is_zero());
  }

  TEST_CASE("coefficient extraction on random conjugations") {
    Gen g(41);
    const std::vector<AlgebraPtr> rs = {matrix_algebra(kQ, 2), quaternion_algebra(q(-1), q(-1))};
    const std::vector<RingPtr> ss = {Ring::field(kQ), Ring::polynomial(kQ, 1),
                                     Ring::findim(upper_triangular_algebra(kQ, 2))};
    for (const AlgebraPtr& r : rs)
      for (const RingPtr& s : ss) {
        for (int i = 0; i < 6; ++i) {
          const bool matrix = r->labels()[0] == "e11";
          const TensorElement a = matrix ? g.unipotent(r, 2, s, 2, 2)
                                         : g.invertible(r, s, s->family() == RingFamily::polynomial ? 0 : 1);
          const HomSpec phi = require_hom(r, s, conjugation_images(a));
          const CoefficientTuple ct = extract_coefficients(phi);
          const std::size_t d = r->dimension();
          // (a) phi(x) = sum_k c_k x b_k on every basis element.
          for (std::size_t p = 0; p < d; ++p) {
            TensorElement sum = TensorElement::zero(r, s);
            for (std::size_t k = 0; k < d; ++k) sum = sum + ct.c[k] * TensorElement::basis(r, s, p) * TensorElement::basis(r, s, k);
            REQUIRE(sum == phi.images[p]);
          }
          // (b) phi(x) c_k = c_k x and (c) sum_k c_k b_k = 1.
          TensorElement unit = TensorElement::zero(r, s);
          for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t p = 0; p < d; ++p)
              REQUIRE(phi.images[p] * ct.c[k] == ct.c[k] * TensorElement::basis(r, s, p));
            unit = unit + ct.c[k] * TensorElement::basis(r, s, k);
          }
          REQUIRE(unit.is_one());
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
              REQUIRE(witness(phi, ct, k, l) * ct.c[k] == TensorElement::from_s(r, ct.s[k][l]));
          if (s->family() != RingFamily::polynomial) REQUIRE(unit_in_coefficient_span(ct).has_value());
        }
      }
  }

  TEST_CASE("a coefficient tuple alone rebuilds a multiplicative map") {
    Gen g(42);
    const AlgebraPtr r = matrix_algebra(kQ, 2);
    const RingPtr s = Ring::polynomial(kQ, 1);
    for (int i = 0; i < 10; ++i) {
      const TensorElement a = g.unipotent(r, 2, s, 3, 2);
      const HomValidation v = validate_hom(r, s, conjugation_images(a));
      REQUIRE(v.ok());
      const CoefficientTuple ct = extract_coefficients(*v.hom);
      auto phi_of = [&](const TensorElement& x) {
        TensorElement out = TensorElement::zero(r, s);
        for (std::size_t k = 0; k < 4; ++k) out = out + ct.c[k] * x * TensorElement::basis(r, s, k);
        return out;
      };
      for (int j = 0; j < 10; ++j) {
        const TensorElement x = g.tensor(r, s, 1), y = g.tensor(r, s, 1);
        REQUIRE(phi_of(x * y) == phi_of(x) * phi_of(y));
      }
      REQUIRE(phi_of(TensorElement::one(r, s)).is_one());
    }
  }

  TEST_CASE("homomorphism validation") {
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const RingPtr s = Ring::polynomial(kQ, 1);
    CHECK(validate_hom(m2, s, identity_images(m2, s)).ok());
    std::vector<TensorElement> bad = identity_images(m2, s);
    bad[1] = bad[1] + TensorElement::basis(m2, s, 0);
    const HomValidation v = validate_hom(m2, s, bad);
    REQUIRE_FALSE(v.ok());
    REQUIRE(v.violation->kind == HomViolation::Kind::product);
    // First failing pair in row-major order: (e12, e11).
    CHECK(v.violation->i == 1);
    CHECK(v.violation->j == 0);
    // (e12, e12) fails too: the image of e12 is no longer square zero.
    CHECK_FALSE((bad[1] * bad[1]).is_zero());
    std::vector<TensorElement> not_unital = identity_images(m2, s);
    not_unital[3] = TensorElement::zero(m2, s);
    CHECK(validate_hom(m2, s, not_unital).violation->kind == HomViolation::Kind::unit);
    CHECK(validate_hom(diagonal_algebra(kQ, 2), s, identity_images(diagonal_algebra(kQ, 2), s)).violation->kind ==
          HomViolation::Kind::not_central_simple);
    CHECK_THROWS_AS(require_hom(m2, s, bad), DomainError);
  }

  TEST_CASE("conjugator verification") {
    Gen g(43);
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const RingPtr s = Ring::polynomial(kQ, 1);
    CHECK(verify_conjugator(require_hom(m2, s, identity_images(m2, s)), TensorElement::one(m2, s)).passed);
    for (int i = 0; i < 20; ++i) {
      const TensorElement a = g.unipotent(m2, 2, s, 2, 2);
      const HomSpec phi = require_hom(m2, s, conjugation_images(a));
      REQUIRE(verify_conjugator(phi, a).passed);
      // a + 1 (x) t commutes with nothing useful unless a already does.
      const TensorElement c = a + TensorElement::pure(m2, s, m2->basis_vector(1), RingElement::one(s));
      const ConjugatorCheck chk = verify_conjugator(phi, c);
      if (!chk.passed && chk.inverse) REQUIRE(chk.failed_index.has_value());
    }
  }

  TEST_CASE("finite-dimensional backend examples") {
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const RingPtr qr = Ring::field(kQ);
    const Certificate id = solve_findim(request(require_hom(m2, qr, identity_images(m2, qr))));
    REQUIRE(id.status == Status::Inner);
    const auto lambda = unit_part(*id.conjugator);
    REQUIRE(lambda.has_value());
    CHECK_FALSE(lambda->is_zero());

    const RingPtr t = Ring::findim(truncated_polynomial_algebra(kQ, 2));
    const RingElement tt = RingElement::findim(t, {q(0), q(1)});
    const TensorElement a = TensorElement::one(m2, t) + TensorElement::pure(m2, t, m2->basis_vector(1), tt);
    const HomSpec phi = require_hom(m2, t, conjugation_images(a));
    const Certificate cert = solve_findim(request(phi));
    REQUIRE(cert.status == Status::Inner);
    require_same_up_to_center(a, *cert.conjugator);

    const AlgebraPtr h = quaternion_algebra(q(-1), q(-1));
    Vec one_plus_i = h->unit();
    one_plus_i[1] = q(1);
    const TensorElement ai = TensorElement::from_r(h, qr, one_plus_i);
    const Certificate ch = solve_findim(request(require_hom(h, qr, conjugation_images(ai))));
    REQUIRE(ch.status == Status::Inner);
    require_same_up_to_center(ai, *ch.conjugator);
  }

  TEST_CASE("UFD backend examples") {
    const RingPtr s = Ring::polynomial(kQ, 1);
    const TensorElement a = mat(s, 2, {"1", "x", "0", "1"});
    const Certificate cert = solve_ufd(request(require_hom(a.r(), s, conjugation_images(a))));
    REQUIRE(cert.status == Status::Inner);
    const auto ratio = unit_part(*tensor_invert(a) * *cert.conjugator);
    REQUIRE(ratio.has_value());
    CHECK(as_scalar(*ratio).has_value());
    const RingPtr s2 = Ring::polynomial(kQ, 2);
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const Certificate c2 = solve_ufd(request(require_hom(m2, s2, identity_images(m2, s2))));
    REQUIRE(c2.status == Status::Inner);
    CHECK(unit_part(*c2.conjugator).has_value());
  }

  TEST_CASE("PID backend on 1 (x) diag(x, 1)") {
    const RingPtr a = Ring::polynomial(kQ, 1);
    const RingPtr ma = Ring::matrix(a, 2);
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const RingElement x = io::parse_element(a, "x"), one = RingElement::one(a), zero = RingElement::zero(a);
    const TensorElement pres = TensorElement::from_s(m2, RingElement::matrix(ma, {x, zero, zero, one}));
    const PidFactorization fac = factor_pid(pres);
    // M(a) = x A + A: c = diag(x, 1) up to row operations, u invertible.
    CHECK(fac.data.c.size() == 2);
    CHECK((fac.u * fac.u_inverse).is_one());
    const Certificate cert = solve_pid_module(request(require_hom(m2, ma, identity_images(m2, ma))));
    REQUIRE(cert.status == Status::Inner);
    CHECK(unit_part(*cert.conjugator).has_value());
    // n = 1 behaves like the UFD backend.
    const RingPtr m1 = Ring::matrix(a, 1);
    const TensorElement u = mat(a, 2, {"1", "x^2", "0", "1"});
    std::vector<TensorElement> images;
    for (const auto& im : conjugation_images(u)) {
      std::vector<RingElement> c;
      for (const auto& e : im.coords()) c.push_back(RingElement::matrix(m1, {e}));
      images.emplace_back(m2, m1, c);
    }
    const Certificate c1 = solve_pid_module(request(require_hom(m2, m1, images)));
    REQUIRE(c1.status == Status::Inner);
    const Certificate cu = solve_ufd(request(require_hom(m2, a, conjugation_images(u))));
    REQUIRE(cu.status == Status::Inner);
  }

  TEST_CASE("power series backend examples") {
    const RingPtr base = Ring::field(kQ);
    const RingPtr s = Ring::series(base, 8);
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const Certificate id = solve_power_series(request(require_hom(m2, s, identity_images(m2, s))));
    REQUIRE(id.status == Status::Inner);
    REQUIRE(unit_part(*id.conjugator).has_value());
    std::vector<RingElement> xi_coeffs(2, RingElement::zero(base));
    xi_coeffs[1] = RingElement::one(base);
    const RingElement xi = RingElement::series(s, xi_coeffs);
    const TensorElement a = TensorElement::one(m2, s) + TensorElement::pure(m2, s, m2->basis_vector(1), xi);
    const Certificate cert = solve_power_series(request(require_hom(m2, s, conjugation_images(a))));
    REQUIRE(cert.status == Status::Inner);
    require_same_up_to_center(a, *cert.conjugator);
    REQUIRE(cert.parts.size() == 1);
    CHECK(cert.parts[0].status == Status::Inner);
  }

  TEST_CASE("product backend examples") {
    const RingPtr q1 = Ring::field(kQ);
    const RingPtr qq = Ring::product(q1, q1);
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const Certificate id = solve_product(request(require_hom(m2, qq, identity_images(m2, qq))));
    REQUIRE(id.status == Status::Inner);
    REQUIRE(id.parts.size() == 2);
    const auto center = unit_part(*id.conjugator);
    REQUIRE(center.has_value());
    CHECK(ring_is_unit(*center));

    Gen g(44);
    const RingPtr mixed = Ring::product(Ring::findim(truncated_polynomial_algebra(kQ, 2)), Ring::polynomial(kQ, 1));
    for (int i = 0; i < 5; ++i) {
      const TensorElement a1 = g.invertible(m2, mixed->factor(0));
      const TensorElement a2 = g.unipotent(m2, 2, mixed->factor(1), 2, 2);
      std::vector<RingElement> coords;
      for (std::size_t k = 0; k < 4; ++k) coords.push_back(RingElement::product(mixed, a1.coord(k), a2.coord(k)));
      const TensorElement a(m2, mixed, coords);
      const HomSpec phi = require_hom(m2, mixed, conjugation_images(a));
      const Certificate cert = dispatch(request(phi, 5 + i));
      REQUIRE(cert.status == Status::Inner);
      CHECK(cert.backend == "product");
      REQUIRE(cert.parts.size() == 2);
      CHECK(cert.parts[0].backend == "findim");
      CHECK(cert.parts[1].backend == "ufd");
      require_conjugates(phi, *cert.conjugator);
    }
  }

  TEST_CASE("curve certifier examples") {
    const RingPtr s = Ring::curve(kQ);
    auto solve = [&](const TensorElement& a) {
      SolveRequest req = request(require_hom(a.r(), s, conjugation_images(a)));
      req.presentation = a;
      return certify_not_inner_curve(req);
    };
    const Certificate neg = solve(mat(s, 2, {"y", "x", "x^2", "y"}));
    REQUIRE(neg.status == Status::NotInner);
    REQUIRE(neg.curve.has_value());
    CHECK(neg.curve->delta == io::parse_element(s, "x"));
    REQUIRE(neg.curve->branches.size() == 2);
    for (const auto& b : neg.curve->branches) CHECK(b.refuted);
    const Certificate id = solve(mat(s, 2, {"1", "0", "0", "1"}));
    REQUIRE(id.status == Status::Inner);
    CHECK(id.conjugator->is_one());
    const Certificate scalar = solve(mat(s, 2, {"x", "0", "0", "x"}));
    REQUIRE(scalar.status == Status::Inner);
    CHECK(scalar.conjugator->is_one());
  }

  TEST_CASE("dispatch picks the backend by ring family") {
    std::string why;
    CHECK(select_backend(Ring::polynomial(kQ, 2)) == std::optional<std::string>("ufd"));
    CHECK(select_backend(Ring::polynomial(kQ, 1)) == std::optional<std::string>("ufd"));
    CHECK(select_backend(Ring::series(Ring::findim(truncated_polynomial_algebra(kQ, 2)), 4)) ==
          std::optional<std::string>("series"));
    CHECK(select_backend(Ring::curve(kQ)) == std::optional<std::string>("curve"));
    CHECK(select_backend(Ring::findim(diagonal_algebra(kQ, 2))) == std::optional<std::string>("findim"));
    CHECK(select_backend(Ring::matrix(Ring::polynomial(kQ, 1), 2)) == std::optional<std::string>("pid-matrix"));
    CHECK_FALSE(select_backend(Ring::free_algebra(kQ, 2), &why).has_value());
    CHECK(why.find("Sylvester") != std::string::npos);
  }

  TEST_CASE("completeness on random conjugations across coefficient rings") {
    Gen g(45);
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const std::vector<RingPtr> rings = {
        Ring::findim(g.findim_algebra(kQ, 4)), Ring::polynomial(kQ, 1), Ring::polynomial(kQ, 2),
        Ring::series(Ring::field(kQ), 6), Ring::product(Ring::field(kQ), Ring::polynomial(kQ, 1))};
    for (const RingPtr& s : rings) {
      INFO(s->name());
      for (int i = 0; i < 4; ++i) {
        const TensorElement a = g.unipotent(m2, 2, s, 2, s->family() == RingFamily::findim ? 0 : 3);
        const HomSpec phi = require_hom(m2, s, conjugation_images(a));
        const Certificate c1 = dispatch(request(phi, 100 + i));
        REQUIRE(c1.status == Status::Inner);
        require_conjugates(phi, *c1.conjugator);
        const Certificate c2 = dispatch(request(phi, 200 + i));
        REQUIRE(c2.status == Status::Inner);
        require_same_up_to_center(*c1.conjugator, *c2.conjugator);
        // Determinism: the same request gives the same certificate.
        const Certificate again = dispatch(request(phi, 100 + i));
        const std::string digest = io::problem_digest(io::solve_problem(phi));
        REQUIRE(io::canonical_dump(io::certificate_to_json(c1, digest)) ==
                io::canonical_dump(io::certificate_to_json(again, digest)));
      }
    }
  }

  TEST_CASE("field size guard for small prime fields") {
    CHECK(field_size_guard(Field::prime(3), 16).has_value());
    CHECK_FALSE(field_size_guard(Field::prime(10007), 16).has_value());
    CHECK_FALSE(field_size_guard(kQ, 1000).has_value());
  }
}
