#include "snforge/sn_core.hpp"

#include "snforge/error.hpp"

namespace snforge {

namespace {

const FMatrix& spanning_inverse(const StructAlgebra& r) {
  const CsaData& data = r.csa();
  if (!data.central_simple)
    throw DomainError("R is not central simple (spanning rank " + std::to_string(data.spanning_rank) + " < " +
                      std::to_string(r.dimension() * r.dimension()) + ")");
  return data.spanning_inverse;
}

// sum_i lambda_i t_i for F-scalars lambda and S-elements t.
RingElement combine(const RingPtr& s, const FMatrix& m, std::size_t row, const std::vector<RingElement>& t) {
  RingElement acc = RingElement::zero(s);
  for (std::size_t j = 0; j < t.size(); ++j)
    if (!m(row, j).is_zero() && !t[j].is_zero()) acc += scale(m(row, j), t[j]);
  return acc;
}

}  // namespace

DualSystem dual_system(const AlgebraPtr& r, std::size_t index) {
  const std::size_t d = r->dimension();
  if (index >= d) throw DomainError("dual system index out of range");
  const FMatrix& inv = spanning_inverse(*r);
  Vec h(d * d, FieldElement::zero(r->field()));
  for (std::size_t m = 0; m < d; ++m) h[index * d + m] = r->unit()[m];
  const Vec lambda = inv.apply(h);
  DualSystem ds{r, index, {}};
  for (std::size_t p = 0; p < d; ++p) {
    Vec z(lambda.begin() + static_cast<long>(p * d), lambda.begin() + static_cast<long>((p + 1) * d));
    bool nonzero = false;
    for (const auto& x : z) nonzero = nonzero || !x.is_zero();
    if (nonzero) ds.pairs.emplace_back(r->basis_vector(p), std::move(z));
  }
  for (std::size_t k = 0; k < d; ++k) {
    Vec sum = r->zero_vector();
    for (const auto& [w, z] : ds.pairs) {
      const Vec t = r->multiply(r->multiply(w, r->basis_vector(k)), z);
      for (std::size_t m = 0; m < d; ++m) sum[m] += t[m];
    }
    if (sum != (k == index ? r->unit() : r->zero_vector())) throw InternalError("dual system check failed");
  }
  return ds;
}

TensorElement HomSpec::apply(const Vec& x) const {
  TensorElement out = TensorElement::zero(r, s);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    std::vector<RingElement> c;
    for (const auto& y : images[k].coords()) c.push_back(scale(x[k], y));
    out = out + TensorElement(r, s, std::move(c));
  }
  return out;
}

HomValidation validate_hom(const AlgebraPtr& r, const RingPtr& s, std::vector<TensorElement> images) {
  HomValidation out;
  const std::size_t d = r->dimension();
  auto fail = [&](HomViolation::Kind kind, std::string msg) {
    out.violation = HomViolation{kind, 0, 0, std::nullopt, std::nullopt, std::move(msg)};
    return out;
  };
  if (!verify_central_simple(*r)) return fail(HomViolation::Kind::not_central_simple, "R is not central simple");
  if (images.size() != d)
    return fail(HomViolation::Kind::wrong_shape,
                "expected " + std::to_string(d) + " images, got " + std::to_string(images.size()));
  for (std::size_t k = 0; k < d; ++k)
    if (!(images[k].r() == r || images[k].r()->same_as(*r)) || !same_ring(images[k].s(), s))
      return fail(HomViolation::Kind::wrong_shape, "image of " + r->labels()[k] + " lies in the wrong ring");
  HomSpec phi{r, s, std::move(images), false};
  const TensorElement one = TensorElement::one(r, s);
  const TensorElement phi1 = phi.apply(r->unit());
  if (phi1 != one) {
    out.violation = HomViolation{HomViolation::Kind::unit, 0, 0, phi1, one, "phi(1) = " + phi1.to_string() + " is not 1"};
    return out;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const TensorElement lhs = phi.images[i] * phi.images[j];
      const TensorElement rhs = phi.apply(r->multiply(r->basis_vector(i), r->basis_vector(j)));
      if (lhs != rhs) {
        const auto& lab = r->labels();
        out.violation = HomViolation{HomViolation::Kind::product, i, j, lhs, rhs,
                                     "phi(" + lab[i] + ")phi(" + lab[j] + ") = " + lhs.to_string() + " but phi(" +
                                         lab[i] + lab[j] + ") = " + rhs.to_string()};
        return out;
      }
    }
  phi.validated = true;
  out.hom = std::move(phi);
  return out;
}

HomSpec require_hom(const AlgebraPtr& r, const RingPtr& s, std::vector<TensorElement> images) {
  auto v = validate_hom(r, s, std::move(images));
  if (!v.ok()) throw DomainError("not a homomorphism: " + v.violation->message);
  return std::move(*v.hom);
}

CoefficientTuple extract_coefficients(const HomSpec& phi) {
  if (!phi.validated) throw DomainError("extract_coefficients needs a validated homomorphism");
  const auto& r = *phi.r;
  const std::size_t d = r.dimension();
  const FMatrix& inv = spanning_inverse(r);
  std::vector<RingElement> rhs;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t m = 0; m < d; ++m) rhs.push_back(phi.images[p].coord(m));
  CoefficientTuple ct;
  ct.s.assign(d, std::vector<RingElement>(d, RingElement::zero(phi.s)));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) ct.s[k][l] = combine(phi.s, inv, l * d + k, rhs);
    ct.c.emplace_back(phi.r, phi.s, ct.s[k]);
  }
  // (a), (b), (c)
  for (std::size_t p = 0; p < d; ++p) {
    const Vec bp = r.basis_vector(p);
    TensorElement sum = TensorElement::zero(phi.r, phi.s);
    for (std::size_t k = 0; k < d; ++k)
      if (!ct.c[k].is_zero()) sum = sum + ct.c[k] * TensorElement::from_r(phi.r, phi.s, r.multiply(bp, r.basis_vector(k)));
    if (sum != phi.images[p]) throw DomainError("coefficient identity fails at " + r.labels()[p]);
    const TensorElement x = TensorElement::from_r(phi.r, phi.s, bp);
    for (std::size_t k = 0; k < d; ++k)
      if (phi.images[p] * ct.c[k] != ct.c[k] * x)
        throw DomainError("phi(x) c_k = c_k x fails for x = " + r.labels()[p] + ", k = " + r.labels()[k]);
  }
  TensorElement total = TensorElement::zero(phi.r, phi.s);
  for (std::size_t k = 0; k < d; ++k) total = total + ct.c[k] * TensorElement::basis(phi.r, phi.s, k);
  if (!total.is_one()) throw DomainError("sum_k c_k b_k is not 1");
  return ct;
}

TensorElement witness(const HomSpec& phi, const CoefficientTuple& ct, std::size_t k, const DualSystem& dual) {
  TensorElement b = TensorElement::zero(phi.r, phi.s);
  for (const auto& [w, z] : dual.pairs) b = b + TensorElement::from_r(phi.r, phi.s, w) * phi.apply(z);
  const RingElement& s = ct.s.at(k).at(dual.index);
  if (b * ct.c[k] != TensorElement::from_s(phi.r, s))
    throw InternalError("witness identity b c_k = 1 (x) s fails");
  return b;
}

TensorElement witness(const HomSpec& phi, const CoefficientTuple& ct, std::size_t k, std::size_t l) {
  return witness(phi, ct, k, dual_system(phi.r, l));
}

std::optional<std::vector<FieldElement>> unit_in_coefficient_span(const CoefficientTuple& ct) {
  if (ct.s.empty()) return std::nullopt;
  const RingPtr s = ct.s[0][0].ring();
  const std::size_t d = ct.s.size();
  const Field f = s->base_field();
  const std::size_t ds = s->dimension();
  auto coords = [&](const RingElement& x) -> Vec {
    if (s->family() == RingFamily::field) return {x.field_value()};
    return x.coords();
  };
  FMatrix m(ds, d * d, FieldElement::zero(f));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const Vec v = coords(ct.s[k][l]);
      for (std::size_t t = 0; t < ds; ++t) m(t, k * d + l) = v[t];
    }
  return solve_vector(m, coords(RingElement::one(s)), FieldElement::zero(f));
}

ConjugatorCheck verify_conjugator(const HomSpec& phi, const TensorElement& c) {
  ConjugatorCheck out;
  auto inv = tensor_invert(c);
  if (!inv) {
    out.reason = "c is not invertible in R (x) S";
    out.transcript.push_back("invert c: FAIL");
    return out;
  }
  out.transcript.push_back("c c^-1 = 1: ok");
  out.transcript.push_back("c^-1 c = 1: ok");
  const auto& r = *phi.r;
  for (std::size_t k = 0; k < r.dimension(); ++k) {
    const TensorElement lhs = phi.images[k] * c;
    const TensorElement rhs = c * TensorElement::basis(phi.r, phi.s, k);
    if (lhs != rhs) {
      out.failed_index = k;
      out.reason = "phi(" + r.labels()[k] + ") c != c " + r.labels()[k];
      out.transcript.push_back("phi(" + r.labels()[k] + ") c = c " + r.labels()[k] + ": FAIL");
      return out;
    }
    out.transcript.push_back("phi(" + r.labels()[k] + ") c = c " + r.labels()[k] + ": ok");
  }
  out.passed = true;
  out.inverse = std::move(inv);
  return out;
}

std::vector<TensorElement> conjugation_images(const TensorElement& a) {
  const AlgebraPtr& r = a.r();
  const RingPtr& s = a.s();
  std::vector<TensorElement> images;
  std::optional<TensorElement> inv;
  const bool domain = s->caps().domain && s->caps().commutative &&
                      (s->family() == RingFamily::polynomial || s->family() == RingFamily::curve);
  if (!domain) {
    inv = tensor_invert(a);
    if (!inv) throw DomainError("conjugating element is not invertible in R (x) S");
    for (std::size_t k = 0; k < r->dimension(); ++k) images.push_back(a * TensorElement::basis(r, s, k) * *inv);
    return images;
  }
  const BareissSolution sol = bareiss_solve(regular_representation(a), TensorElement::one(r, s).coords());
  if (sol.determinant.is_zero()) throw DomainError("conjugating element is a zero divisor");
  const TensorElement v(r, s, sol.adjugate_rhs);  // determinant * a^-1
  for (std::size_t k = 0; k < r->dimension(); ++k) {
    const TensorElement num = a * TensorElement::basis(r, s, k) * v;
    std::vector<RingElement> coords;
    for (const auto& x : num.coords()) {
      auto q = ring_divide(x, sol.determinant);
      if (!q) throw DomainError("conjugate of " + r->labels()[k] + " has a coefficient outside S");
      coords.push_back(std::move(*q));
    }
    images.emplace_back(r, s, std::move(coords));
  }
  return images;
}

}  // namespace snforge
