#include <doctest.h>

#include "gen.hpp"
#include "snforge/error.hpp"
#include "snforge/tensor.hpp"

using namespace snforge;
using snforge::testing::Gen;
using snforge::testing::kQ;

namespace {

FieldElement q(long n) { return FieldElement(kQ, n); }

Vec e(const AlgebraPtr& a, std::size_t i) { return a->basis_vector(i); }

// Largest nilpotent two-sided ideal among spans of subsets of the basis,
// found by trying every subset. Only meaningful for small algebras whose
// radical is spanned by basis vectors.
std::size_t largest_nilpotent_basis_ideal(const AlgebraPtr& a) {
  const std::size_t d = a->dimension();
  std::size_t best = 0;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    std::vector<Vec> span;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) span.push_back(e(a, i));
    if (is_two_sided_ideal(*a, span) && is_nilpotent_subspace(*a, span)) best = std::max(best, span.size());
  }
  return best;
}

}  // namespace

TEST_SUITE("algebras") {
  TEST_CASE("matrix algebras") {
    const AlgebraPtr m1 = matrix_algebra(kQ, 1);
    CHECK(m1->dimension() == 1);
    CHECK(m1->dense_table() == field_algebra(kQ)->dense_table());
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    CHECK(m2->dimension() == 4);
    CHECK(m2->multiply(e(m2, 1), e(m2, 2)) == e(m2, 0));
    CHECK(m2->multiply(e(m2, 2), e(m2, 1)) == e(m2, 3));
    CHECK(m2->labels() == std::vector<std::string>{"e11", "e12", "e21", "e22"});
    // Exhaustive associativity on basis triples of M_3.
    const AlgebraPtr m3 = matrix_algebra(kQ, 3);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j)
        for (std::size_t k = 0; k < 9; ++k)
          REQUIRE(m3->multiply(m3->multiply(e(m3, i), e(m3, j)), e(m3, k)) ==
                  m3->multiply(e(m3, i), m3->multiply(e(m3, j), e(m3, k))));
  }

  TEST_CASE("quaternion algebras") {
    const AlgebraPtr h = quaternion_algebra(q(-1), q(-1));
    CHECK(h->multiply(e(h, 1), e(h, 2)) == e(h, 3));
    Vec minus_k = h->zero_vector();
    minus_k[3] = q(-1);
    CHECK(h->multiply(e(h, 2), e(h, 1)) == minus_k);
    CHECK(verify_central_simple(*h));
    CHECK(verify_central_simple(*quaternion_algebra(q(1), q(1))));
    CHECK(verify_central_simple(*quaternion_algebra(FieldElement(Field::prime(10007), -1L),
                                                    FieldElement(Field::prime(10007), -1L))));
  }

  TEST_CASE("central simplicity") {
    for (std::size_t n = 1; n <= 3; ++n) CHECK(verify_central_simple(*matrix_algebra(kQ, n)));
    CHECK_FALSE(verify_central_simple(*diagonal_algebra(kQ, 2)));
    CHECK_FALSE(verify_central_simple(*truncated_polynomial_algebra(kQ, 2)));
    CHECK_FALSE(verify_central_simple(*upper_triangular_algebra(kQ, 2)));
    CHECK(verify_central_simple(*tensor_product(matrix_algebra(kQ, 2), quaternion_algebra(q(-1), q(-1)))));
    // Every commutative algebra of dimension >= 2 fails.
    Gen g(31);
    for (int i = 0; i < 40; ++i) {
      const AlgebraPtr a = g.findim_algebra(kQ, 6);
      if (a->dimension() >= 2 && a->is_commutative()) REQUIRE_FALSE(verify_central_simple(*a));
    }
  }

  TEST_CASE("structure tables are verified at construction") {
    const AlgebraPtr m2 = matrix_algebra(kQ, 2);
    const StructAlgebra::Table good = m2->dense_table();
    CHECK_NOTHROW(StructAlgebra::from_table(kQ, good, m2->unit()));
    Gen g(32);
    int rejected = 0;
    for (int i = 0; i < 60; ++i) {
      StructAlgebra::Table bad = good;
      const std::size_t a = g.index(4), b = g.index(4), c = g.index(4);
      bad[a][b][c] = bad[a][b][c] + q(g.integer(1, 3));
      CHECK_THROWS_AS(StructAlgebra::from_table(kQ, bad, m2->unit()), DomainError);
      ++rejected;
    }
    CHECK(rejected == 60);
    Vec wrong_unit = m2->unit();
    wrong_unit[3] = q(0);
    CHECK_THROWS_AS(StructAlgebra::from_table(kQ, good, wrong_unit), DomainError);
  }

  TEST_CASE("centers") {
    CHECK(center_basis(*matrix_algebra(kQ, 3)).size() == 1);
    CHECK(center_basis(*diagonal_algebra(kQ, 3)).size() == 3);
    CHECK(center_basis(*truncated_polynomial_algebra(kQ, 3)).size() == 3);
    CHECK(center_basis(*upper_triangular_algebra(kQ, 2)).size() == 1);
    CHECK(center_basis(*direct_product(matrix_algebra(kQ, 2), field_algebra(kQ))).size() == 2);
  }

  TEST_CASE("radical examples") {
    CHECK(jacobson_radical(*matrix_algebra(kQ, 2)).empty());
    const AlgebraPtr t2 = upper_triangular_algebra(kQ, 2);
    const auto rad_t = jacobson_radical(*t2);
    REQUIRE(rad_t.size() == 1);
    CHECK(Subspace(kQ, 3, rad_t) == Subspace(kQ, 3, {e(t2, 1)}));
    CHECK(largest_nilpotent_basis_ideal(t2) == 1);
    const AlgebraPtr d2 = truncated_polynomial_algebra(kQ, 2);
    const auto rad_d = jacobson_radical(*d2);
    REQUIRE(rad_d.size() == 1);
    CHECK(Subspace(kQ, 2, rad_d) == Subspace(kQ, 2, {e(d2, 1)}));
    CHECK(d2->multiply(e(d2, 1), e(d2, 1)) == d2->zero_vector());
    CHECK(jacobson_radical(*upper_triangular_algebra(kQ, 3)).size() == 3);
    CHECK(largest_nilpotent_basis_ideal(upper_triangular_algebra(kQ, 3)) == 3);
    CHECK_THROWS_AS(jacobson_radical(*truncated_polynomial_algebra(Field::prime(5), 2)), Unsupported);
  }

  TEST_CASE("radical of M_n(S) is M_n(rad S) on random S") {
    Gen g(33);
    for (int i = 0; i < 25; ++i) {
      const AlgebraPtr s = g.findim_algebra(kQ, 5);
      const std::size_t n = g.coin() ? 2 : 3;
      const AlgebraPtr mn = matrix_algebra(kQ, n);
      const AlgebraPtr big = tensor_product(mn, s);
      const auto rad_s = jacobson_radical(*s);
      std::vector<Vec> expected;
      for (std::size_t u = 0; u < n * n; ++u)
        for (const Vec& r : rad_s) {
          Vec v = big->zero_vector();
          for (std::size_t m = 0; m < s->dimension(); ++m) v[u * s->dimension() + m] = r[m];
          expected.push_back(v);
        }
      const Subspace direct(kQ, big->dimension(), jacobson_radical(*big));
      const Subspace built(kQ, big->dimension(), expected);
      REQUIRE(direct.dimension() == built.dimension());
      REQUIRE(direct.contains(built));
      REQUIRE(built.contains(direct));
    }
  }

  TEST_CASE("quotient by the radical is semisimple") {
    Gen g(34);
    for (int i = 0; i < 30; ++i) {
      const AlgebraPtr a = g.findim_algebra(kQ, 6);
      const auto rad = jacobson_radical(*a);
      REQUIRE(is_two_sided_ideal(*a, rad));
      REQUIRE(is_nilpotent_subspace(*a, rad));
      const Quotient quo = quotient_algebra(a, rad);
      REQUIRE(quo.algebra->dimension() == a->dimension() - rad.size());
      REQUIRE(jacobson_radical(*quo.algebra).empty());
      // The projection is multiplicative.
      const Vec x = g.vec(kQ, a->dimension()), y = g.vec(kQ, a->dimension());
      REQUIRE(quo.project(a->multiply(x, y)) == quo.algebra->multiply(quo.project(x), quo.project(y)));
    }
  }

  TEST_CASE("tensor products index a_i (x) b_j at i * dim(b) + j") {
    const AlgebraPtr a = matrix_algebra(kQ, 2), b = truncated_polynomial_algebra(kQ, 3);
    const AlgebraPtr t = tensor_product(a, b);
    REQUIRE(t->dimension() == 12);
    for (std::size_t i1 = 0; i1 < 4; ++i1)
      for (std::size_t j1 = 0; j1 < 3; ++j1)
        for (std::size_t i2 = 0; i2 < 4; ++i2)
          for (std::size_t j2 = 0; j2 < 3; ++j2) {
            const Vec pa = a->multiply(e(a, i1), e(a, i2)), pb = b->multiply(e(b, j1), e(b, j2));
            Vec expected = t->zero_vector();
            for (std::size_t i = 0; i < 4; ++i)
              for (std::size_t j = 0; j < 3; ++j) expected[i * 3 + j] = pa[i] * pb[j];
            REQUIRE(t->multiply(e(t, i1 * 3 + j1), e(t, i2 * 3 + j2)) == expected);
          }
  }

  TEST_CASE("change of basis gives an isomorphic algebra") {
    Gen g(35);
    for (int i = 0; i < 30; ++i) {
      const AlgebraPtr a = g.findim_algebra(kQ, 5);
      const std::size_t d = a->dimension();
      FMatrix m(d, d, q(0));
      for (;;) {
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) m(r, c) = g.scalar(kQ, 2);
        if (!determinant(m, q(0)).is_zero()) break;
      }
      const AlgebraPtr b = change_basis(a, m);
      // new coordinates x map to old coordinates m x.
      const Vec x = g.vec(kQ, d), y = g.vec(kQ, d);
      REQUIRE(m.apply(b->multiply(x, y)) == a->multiply(m.apply(x), m.apply(y)));
      REQUIRE(m.apply(b->unit()) == a->unit());
    }
  }

  TEST_CASE("bimodules and the triangular extension") {
    const AlgebraPtr r = matrix_algebra(kQ, 2);
    const Bimodule m = regular_bimodule(r);
    CHECK_NOTHROW(verify_bimodule(m));
    const AlgebraPtr t = triangular_extension(m);
    CHECK(t->dimension() == 8);
    // The copy of M is a square-zero ideal and lies in the radical.
    std::vector<Vec> mpart;
    for (std::size_t i = 4; i < 8; ++i) mpart.push_back(e(t, i));
    CHECK(is_two_sided_ideal(*t, mpart));
    CHECK(is_nilpotent_subspace(*t, mpart));
    CHECK(Subspace(kQ, 8, jacobson_radical(*t)).contains(Subspace(kQ, 8, mpart)));
    Bimodule broken = m;
    broken.left[1] = broken.right[1];
    CHECK_THROWS_AS(verify_bimodule(broken), DomainError);
  }

  TEST_CASE("tensor elements over coefficient rings") {
    const AlgebraPtr r = matrix_algebra(kQ, 2);
    const RingPtr s = Ring::polynomial(kQ, 1);
    const RingElement xi = RingElement::from_poly(s, Poly::variable(kQ, 1, 0));
    const RingElement t = RingElement::from_poly(s, Poly::from_coefficients(kQ, {1, 0, 2}));
    CHECK(TensorElement::from_r(r, s, e(r, 1)) * TensorElement::from_s(r, xi) == TensorElement::pure(r, s, e(r, 1), xi));
    CHECK(TensorElement::pure(r, s, e(r, 1), xi) * TensorElement::pure(r, s, e(r, 2), t) ==
          TensorElement::pure(r, s, e(r, 0), xi * t));
    CHECK(regular_representation(TensorElement::one(r, s)) == Matrix<RingElement>::identity(4, RingElement::zero(s)));
    const Matrix<RingElement> nil = regular_representation(TensorElement::from_r(r, s, e(r, 1)));
    CHECK((nil * nil) == Matrix<RingElement>(4, 4, RingElement::zero(s)));
    CHECK(tensor_invert(TensorElement::one(r, s))->is_one());
    const TensorElement u = TensorElement::one(r, s) + TensorElement::pure(r, s, e(r, 1), xi);
    CHECK(*tensor_invert(u) == TensorElement::one(r, s) - TensorElement::pure(r, s, e(r, 1), xi));
    const TensorElement det_xi = TensorElement::pure(r, s, e(r, 0), xi) + TensorElement::basis(r, s, 3);
    CHECK_FALSE(tensor_invert(det_xi).has_value());
  }

  TEST_CASE("tensor inverses are two-sided") {
    Gen g(36);
    const AlgebraPtr r = quaternion_algebra(q(-1), q(-1));
    for (const RingPtr& s : {Ring::field(kQ), Ring::findim(upper_triangular_algebra(kQ, 2)),
                             Ring::series(Ring::field(kQ), 3), Ring::polynomial(kQ, 1)}) {
      for (int i = 0; i < 40; ++i) {
        const TensorElement u = g.tensor(r, s, 1) + TensorElement::from_r(r, s, g.vec(kQ, 4));
        if (auto inv = tensor_invert(u)) {
          REQUIRE((u * *inv).is_one());
          REQUIRE((*inv * u).is_one());
        }
      }
    }
  }
}
