#include "snforge/applications.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "snforge/error.hpp"

namespace snforge {

namespace {

// Evaluation of an element of S at generator values in some algebra T; T is
// RingElement (substitutions) or TensorElement (automorphisms of M_n(S)).
template <class T>
struct Evaluator {
  std::vector<T> images;
  T one;
  std::function<T(const FieldElement&, const T&)> scale_by;

  T power(std::size_t var, unsigned e, std::map<std::pair<std::size_t, unsigned>, T>& cache) const {
    if (e == 0) return one;
    auto it = cache.find({var, e});
    if (it != cache.end()) return it->second;
    T r = e == 1 ? images.at(var) : power(var, e - 1, cache) * images.at(var);
    cache.emplace(std::make_pair(var, e), r);
    return r;
  }

  T poly(const Poly& p, std::size_t first_var) const {
    std::map<std::pair<std::size_t, unsigned>, T> cache;
    T acc = scale_by(FieldElement::zero(p.field()), one);
    for (const auto& [key, coef] : p.terms()) {
      T mono = one;
      for (std::size_t v = 0; v < p.nvars(); ++v) {
        const unsigned e = Poly::exponent(key, v);
        if (e > 0) mono = mono * power(first_var + v, e, cache);
      }
      acc = acc + scale_by(coef, mono);
    }
    return acc;
  }

  T operator()(const RingElement& t) const {
    const RingPtr& s = t.ring();
    switch (s->family()) {
      case RingFamily::field:
        return scale_by(t.field_value(), one);
      case RingFamily::polynomial:
        return poly(t.poly(), 0);
      case RingFamily::curve:
        return poly(t.curve_coords().a, 0) + poly(t.curve_coords().b, 0) * images.at(1);
      case RingFamily::findim: {
        T acc = scale_by(FieldElement::zero(s->base_field()), one);
        for (std::size_t m = 0; m < t.coords().size(); ++m)
          if (!t.coords()[m].is_zero()) acc = acc + scale_by(t.coords()[m], images.at(m));
        return acc;
      }
      default:
        throw Unsupported("substitution is not available for " + s->name());
    }
  }
};

Evaluator<RingElement> ring_evaluator(const RingPtr& s, std::vector<RingElement> images) {
  return {std::move(images), RingElement::one(s), [](const FieldElement& c, const RingElement& u) { return scale(c, u); }};
}

TensorElement tensor_scale(const FieldElement& c, const TensorElement& u) {
  std::vector<RingElement> coords;
  coords.reserve(u.coords().size());
  for (const auto& x : u.coords()) coords.push_back(scale(c, x));
  return TensorElement(u.r(), u.s(), std::move(coords));
}

Evaluator<TensorElement> tensor_evaluator(const AlgebraPtr& r, const RingPtr& s, std::vector<TensorElement> images) {
  return {std::move(images), TensorElement::one(r, s), tensor_scale};
}

// Relations of S evaluated on generator images in T.
template <class T>
std::optional<std::string> relation_defect(const RingPtr& s, const Evaluator<T>& ev) {
  const auto& im = ev.images;
  for (std::size_t i = 0; i < im.size(); ++i)
    for (std::size_t j = i + 1; j < im.size(); ++j)
      if (s->family() != RingFamily::findim && !(im[i] * im[j] == im[j] * im[i]))
        return "images of generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute";
  switch (s->family()) {
    case RingFamily::curve: {
      const Poly g = s->curve_g();
      if (!(im[1] * im[1] == ev.poly(g, 0))) return "image of y squared differs from g evaluated at the image of x";
      break;
    }
    case RingFamily::findim: {
      const auto& a = *s->algebra();
      for (std::size_t i = 0; i < a.dimension(); ++i)
        for (std::size_t j = 0; j < a.dimension(); ++j) {
          T rhs = ev.scale_by(FieldElement::zero(a.field()), ev.one);
          for (const auto& e : a.product(i, j)) rhs = rhs + ev.scale_by(e.value, im[e.index]);
          if (!(im[i] * im[j] == rhs))
            return "images of " + a.labels()[i] + " and " + a.labels()[j] + " violate the multiplication table";
        }
      T unit = ev.scale_by(FieldElement::zero(a.field()), ev.one);
      for (std::size_t m = 0; m < a.dimension(); ++m) unit = unit + ev.scale_by(a.unit()[m], im[m]);
      if (!(unit == ev.one)) return "image of the unit of S is not 1";
      break;
    }
    default:
      break;
  }
  return std::nullopt;
}

std::size_t matrix_size_of(const AlgebraPtr& r) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(r->dimension()))));
  if (n * n != r->dimension() || !r->same_as(*matrix_algebra(r->field(), n)))
    throw DomainError("automorphism data must live over M_n(F) with the matrix-unit basis");
  return n;
}

AutData twist_inverse(const TensorElement& c, const TensorElement& c_inv, const std::vector<RingElement>& gens,
                      const std::vector<RingElement>& sigma_inverse) {
  const AlgebraPtr& r = c.r();
  const RingPtr& s = c.s();
  AutData inv;
  const auto undo = ring_evaluator(s, sigma_inverse);
  for (std::size_t k = 0; k < r->dimension(); ++k) {
    const TensorElement u = c_inv * TensorElement::basis(r, s, k) * c;
    std::vector<RingElement> coords;
    for (const auto& x : u.coords()) coords.push_back(undo(x));
    inv.unit_images.emplace_back(r, s, std::move(coords));
  }
  for (std::size_t g = 0; g < gens.size(); ++g) inv.generator_images.push_back(TensorElement::from_s(r, sigma_inverse[g]));
  return inv;
}

void check_composite(const AlgebraPtr& r, const RingPtr& s, const AutData& outer, const AutData& inner,
                     const std::vector<RingElement>& gens, const char* what) {
  for (std::size_t k = 0; k < r->dimension(); ++k)
    if (!(apply_automorphism(r, s, outer, inner.unit_images[k]) == TensorElement::basis(r, s, k)))
      throw DomainError(std::string(what) + " is not the identity on " + r->labels()[k] + " (x) 1");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!(apply_automorphism(r, s, outer, inner.generator_images[g]) == TensorElement::from_s(r, gens[g])))
      throw DomainError(std::string(what) + " is not the identity on 1 (x) " + gens[g].to_string());
}

struct SigmaRead {
  std::vector<RingElement> sigma;
  Certificate cert;
};

// Solves on M_n(F) (x) 1 and reads sigma off the generator images.
SigmaRead read_sigma(const AlgebraPtr& r, const RingPtr& s, const AutData& psi, const std::vector<RingElement>& gens,
                     std::uint64_t seed, unsigned trials) {
  SolveRequest req;
  req.phi = require_hom(r, s, psi.unit_images);
  req.seed = seed;
  req.trials = trials;
  SigmaRead out;
  out.cert = dispatch(req);
  if (out.cert.status != Status::Inner) return out;
  const TensorElement& c = *out.cert.conjugator;
  const TensorElement& c_inv = *out.cert.inverse;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto q = unit_part(c_inv * psi.generator_images[g] * c);
    if (!q)
      throw DomainError("c^-1 psi(1 (x) " + gens[g].to_string() +
                        ") c is not in 1 (x) S, so psi does not fix the centralizer of M_n(F)");
    out.sigma.push_back(*q);
  }
  return out;
}

}  // namespace

std::vector<RingElement> ring_generators(const RingPtr& s) {
  std::vector<RingElement> out;
  const Field f = s->base_field();
  switch (s->family()) {
    case RingFamily::field:
      break;
    case RingFamily::polynomial:
      for (std::size_t v = 0; v < s->nvars(); ++v) out.push_back(RingElement::from_poly(s, Poly::variable(f, s->nvars(), v)));
      break;
    case RingFamily::curve:
      out.push_back(RingElement::from_poly(s, Poly::variable(f, 1, 0)));
      out.push_back(RingElement::curve(s, Poly(f, 1), Poly::constant(f, 1, 1)));
      break;
    case RingFamily::findim:
      for (std::size_t m = 0; m < s->dimension(); ++m) out.push_back(RingElement::findim(s, s->algebra()->basis_vector(m)));
      break;
    default:
      throw Unsupported("no generator presentation for " + s->name());
  }
  return out;
}

RingElement substitute(const RingElement& t, const std::vector<RingElement>& images) {
  return ring_evaluator(t.ring(), images)(t);
}

std::optional<std::string> substitution_defect(const RingPtr& s, const std::vector<RingElement>& images) {
  if (images.size() != ring_generators(s).size())
    return "expected " + std::to_string(ring_generators(s).size()) + " generator images, got " +
           std::to_string(images.size());
  for (const auto& x : images)
    if (!same_ring(x.ring(), s)) return "generator image " + x.to_string() + " is not in " + s->name();
  return relation_defect(s, ring_evaluator(s, images));
}

std::optional<std::vector<RingElement>> invert_substitution(const RingPtr& s, const std::vector<RingElement>& images) {
  const Field f = s->base_field();
  const FieldElement zero = FieldElement::zero(f);
  const auto gens = ring_generators(s);
  std::vector<RingElement> inv;
  if (s->family() == RingFamily::field) return inv;
  if (s->family() == RingFamily::polynomial) {
    // sigma(x) = L x + b
    const std::size_t k = s->nvars();
    FMatrix l(k, k, zero);
    Vec b(k, zero);
    for (std::size_t v = 0; v < k; ++v) {
      const Poly& p = images[v].poly();
      if (p.degree() > 1) return std::nullopt;
      b[v] = p.constant_term();
      for (std::size_t w = 0; w < k; ++w) {
        std::vector<unsigned> e(k, 0);
        e[w] = 1;
        for (const auto& [key, coef] : p.terms())
          if (key == Poly::pack(e)) l(v, w) = coef;
      }
    }
    auto l_inv = inverse(l, zero);
    if (!l_inv) return std::nullopt;
    // sigma^-1(x) = L^-1 (x - b)
    for (std::size_t v = 0; v < k; ++v) {
      Poly p(f, k);
      for (std::size_t w = 0; w < k; ++w) {
        if ((*l_inv)(v, w).is_zero()) continue;
        p += (Poly::variable(f, k, w) - Poly::constant(f, k, b[w])).scaled((*l_inv)(v, w));
      }
      inv.push_back(RingElement::from_poly(s, p));
    }
  } else if (s->family() == RingFamily::findim) {
    const std::size_t d = s->dimension();
    FMatrix m(d, d, zero);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) m(i, j) = images[j].coords()[i];
    auto m_inv = inverse(m, zero);
    if (!m_inv) return std::nullopt;
    for (std::size_t j = 0; j < d; ++j) inv.push_back(RingElement::findim(s, m_inv->column(j)));
  } else {
    return std::nullopt;
  }
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!(substitute(inv[g], images) == gens[g]) || !(substitute(images[g], inv) == gens[g])) return std::nullopt;
  return inv;
}

TensorElement apply_automorphism(const AlgebraPtr& r, const RingPtr& s, const AutData& psi, const TensorElement& t) {
  const auto ev = tensor_evaluator(r, s, psi.generator_images);
  TensorElement acc = TensorElement::zero(r, s);
  for (std::size_t i = 0; i < r->dimension(); ++i) {
    if (t.coord(i).is_zero()) continue;
    acc = acc + psi.unit_images[i] * ev(t.coord(i));
  }
  return acc;
}

AutSpec validate_automorphism(const RingPtr& s, std::size_t n, AutData forward, std::optional<AutData> inverse) {
  AutSpec spec;
  spec.s = s;
  spec.n = n;
  spec.r = matrix_algebra(s->base_field(), n);
  const auto gens = ring_generators(s);
  auto check = [&](const AutData& data, const std::string& name) {
    if (data.unit_images.size() != n * n)
      throw DomainError(name + ": expected " + std::to_string(n * n) + " matrix-unit images, got " +
                        std::to_string(data.unit_images.size()));
    if (data.generator_images.size() != gens.size())
      throw DomainError(name + ": expected " + std::to_string(gens.size()) + " generator images, got " +
                        std::to_string(data.generator_images.size()));
    require_hom(spec.r, s, data.unit_images);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& x = data.generator_images[g];
      if (!x.r()->same_as(*spec.r) || !same_ring(x.s(), s))
        throw DomainError(name + ": image of " + gens[g].to_string() + " has the wrong shape");
      for (std::size_t k = 0; k < n * n; ++k)
        if (!(x * data.unit_images[k] == data.unit_images[k] * x))
          throw DomainError(name + ": image of " + gens[g].to_string() + " does not commute with the image of " +
                            spec.r->labels()[k]);
    }
    if (auto why = relation_defect(s, tensor_evaluator(spec.r, s, data.generator_images)))
      throw DomainError(name + ": " + *why);
  };
  check(forward, "psi");
  if (inverse) {
    check(*inverse, "psi^-1");
    check_composite(spec.r, s, forward, *inverse, gens, "psi o psi^-1");
    check_composite(spec.r, s, *inverse, forward, gens, "psi^-1 o psi");
  }
  spec.forward = std::move(forward);
  spec.inverse = std::move(inverse);
  spec.validated = true;
  return spec;
}

AutSpec twisted_inner_automorphism(const TensorElement& c0, const std::vector<RingElement>& sigma,
                                   const std::vector<RingElement>& sigma_inverse) {
  const AlgebraPtr& r = c0.r();
  const RingPtr& s = c0.s();
  const std::size_t n = matrix_size_of(r);
  if (auto why = substitution_defect(s, sigma)) throw DomainError("sigma: " + *why);
  const auto gens = ring_generators(s);
  auto c0_inv = tensor_invert(c0);
  if (!c0_inv) throw DomainError("c0 is not invertible in M_n(S)");
  AutData fwd;
  for (std::size_t k = 0; k < r->dimension(); ++k) fwd.unit_images.push_back(c0 * TensorElement::basis(r, s, k) * *c0_inv);
  for (const auto& x : sigma) fwd.generator_images.push_back(c0 * TensorElement::from_s(r, x) * *c0_inv);
  AutData inv = twist_inverse(c0, *c0_inv, gens, sigma_inverse);
  return validate_automorphism(s, n, std::move(fwd), std::move(inv));
}

AutSpec twisted_inner_automorphism(const TensorElement& c0, const std::vector<RingElement>& sigma) {
  auto inv = invert_substitution(c0.s(), sigma);
  if (!inv) throw DomainError("sigma is not an invertible substitution");
  return twisted_inner_automorphism(c0, sigma, *inv);
}

AutDecomposition decompose_automorphism(const AutSpec& psi, std::uint64_t seed, unsigned trials) {
  if (!psi.validated) throw DomainError("automorphism spec has not been validated");
  const AlgebraPtr& r = psi.r;
  const RingPtr& s = psi.s;
  AutDecomposition out;
  out.generators = ring_generators(s);
  const auto& gens = out.generators;

  SigmaRead fwd = read_sigma(r, s, psi.forward, gens, seed, trials);
  out.certificate = fwd.cert;
  out.status = fwd.cert.status;
  if (out.status != Status::Inner) {
    out.transcript.push_back("restriction to M_n(F): " + status_name(out.status) + " " + fwd.cert.message);
    return out;
  }
  const TensorElement& c = *fwd.cert.conjugator;
  const TensorElement& c_inv = *fwd.cert.inverse;
  out.c = c;
  out.c_inverse = c_inv;
  out.sigma = fwd.sigma;
  out.transcript.push_back("restriction to M_n(F) solved by the " + fwd.cert.backend + " backend");
  for (std::size_t g = 0; g < gens.size(); ++g)
    out.transcript.push_back("sigma(" + gens[g].to_string() + ") = " + out.sigma[g].to_string());
  if (auto why = substitution_defect(s, out.sigma)) throw DomainError("sigma is not a ring endomorphism: " + *why);
  out.transcript.push_back("sigma respects the relations of S: ok");

  // psi^-1, supplied or built from sigma^-1
  AutData inverse_data;
  if (psi.inverse) {
    inverse_data = *psi.inverse;
  } else {
    auto sigma_inv = invert_substitution(s, out.sigma);
    if (!sigma_inv)
      throw DomainError("no inverse data for psi and sigma is not an invertible substitution, so psi is not shown to "
                        "be surjective");
    inverse_data = twist_inverse(c, c_inv, gens, *sigma_inv);
    check_composite(r, s, psi.forward, inverse_data, gens, "psi o psi^-1");
    check_composite(r, s, inverse_data, psi.forward, gens, "psi^-1 o psi");
    out.transcript.push_back("psi^-1 built from sigma^-1 and checked on generators: ok");
  }
  SigmaRead back = read_sigma(r, s, inverse_data, gens, seed, trials);
  if (back.cert.status != Status::Inner)
    throw DomainError("psi^-1 restricted to M_n(F) gave " + status_name(back.cert.status) + ": " + back.cert.message);
  out.sigma_inverse = back.sigma;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!(substitute(out.sigma_inverse[g], out.sigma) == gens[g]))
      throw DomainError("sigma o sigma' is not the identity on " + gens[g].to_string());
    if (!(substitute(out.sigma[g], out.sigma_inverse) == gens[g]))
      throw DomainError("sigma' o sigma is not the identity on " + gens[g].to_string());
  }
  out.transcript.push_back("sigma o sigma' = sigma' o sigma = id on generators: ok");

  // Inn(c) o (id (x) sigma) against psi
  for (std::size_t k = 0; k < r->dimension(); ++k)
    if (!(c * TensorElement::basis(r, s, k) * c_inv == psi.forward.unit_images[k]))
      throw InternalError("reassembly differs from psi on " + r->labels()[k]);
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!(c * TensorElement::from_s(r, out.sigma[g]) * c_inv == psi.forward.generator_images[g]))
      throw InternalError("reassembly differs from psi on 1 (x) " + gens[g].to_string());
  out.transcript.push_back("Inn(c) o (id (x) sigma) = psi on all generators: ok");
  return out;
}

// ---------------------------------------------------------------------------

DerivationSpec validate_derivation(const Bimodule& m, std::vector<Vec> values) {
  verify_bimodule(m);
  const auto& r = *m.algebra;
  if (!verify_central_simple(r)) throw DomainError("derivation source algebra is not central simple");
  const std::size_t d = r.dimension();
  if (values.size() != d)
    throw DomainError("expected " + std::to_string(d) + " derivation values, got " + std::to_string(values.size()));
  const FieldElement zero = FieldElement::zero(r.field());
  for (std::size_t k = 0; k < d; ++k)
    if (values[k].size() != m.dimension)
      throw DomainError("value of d on " + r.labels()[k] + " has " + std::to_string(values[k].size()) +
                        " coordinates, bimodule has dimension " + std::to_string(m.dimension));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec lhs(m.dimension, zero);
      for (const auto& e : r.product(i, j))
        for (std::size_t q = 0; q < m.dimension; ++q) lhs[q] += e.value * values[e.index][q];
      Vec rhs = m.act_right(values[i], r.basis_vector(j));
      const Vec second = m.act_left(r.basis_vector(i), values[j]);
      for (std::size_t q = 0; q < m.dimension; ++q) rhs[q] += second[q];
      if (lhs != rhs)
        throw DomainError("Leibniz rule fails on (" + r.labels()[i] + ", " + r.labels()[j] + ")");
    }
  return DerivationSpec{m.algebra, m, std::move(values), true};
}

DerivationSpec inner_derivation(const Bimodule& m, const Vec& element) {
  std::vector<Vec> values;
  for (std::size_t k = 0; k < m.algebra->dimension(); ++k) {
    const Vec x = m.algebra->basis_vector(k);
    Vec v = m.act_right(element, x);
    const Vec u = m.act_left(x, element);
    for (std::size_t q = 0; q < v.size(); ++q) v[q] -= u[q];
    values.push_back(std::move(v));
  }
  return validate_derivation(m, std::move(values));
}

std::vector<Vec> bimodule_centralizer(const Bimodule& m) {
  const std::size_t d = m.algebra->dimension(), md = m.dimension;
  const FieldElement zero = FieldElement::zero(m.algebra->field());
  FMatrix sys(d * md, md, zero);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < md; ++i)
      for (std::size_t j = 0; j < md; ++j) sys(k * md + i, j) = m.left[k](i, j) - m.right[k](i, j);
  return kernel(sys, zero);
}

DerivationWitness inner_derivation_witness(const DerivationSpec& d, std::uint64_t seed, unsigned trials) {
  if (!d.validated) throw DomainError("derivation spec has not been validated");
  const auto& r = *d.r;
  const Field f = r.field();
  const FieldElement zero = FieldElement::zero(f);
  const std::size_t dr = r.dimension(), dm = d.m.dimension;
  const AlgebraPtr ext = triangular_extension(d.m);
  DerivationWitness out;
  out.ambient_dimension = ext->dimension();
  out.seed = seed;
  out.trials = trials;
  if (auto why = field_size_guard(f, ext->dimension())) {
    out.transcript.push_back(*why);
    return out;
  }

  // phi([x 0; 0 x]) = [x d(x); 0 x]
  std::vector<Vec> phi_images, x_images;
  for (std::size_t k = 0; k < dr; ++k) {
    Vec x = ext->basis_vector(k);
    x_images.push_back(x);
    for (std::size_t q = 0; q < dm; ++q) x[dr + q] = d.values[k][q];
    phi_images.push_back(std::move(x));
  }
  const long bound = static_cast<long>(2 * ext->dimension());
  IntertwinerSearch search = find_invertible_intertwiner(*ext, phi_images, x_images, seed, trials, bound);
  out.kernel_dimension = search.kernel_dimension;
  out.trials_used = search.trials_used;
  out.transcript.push_back("triangular algebra of dimension " + std::to_string(ext->dimension()) +
                           ", intertwiner space dimension " + std::to_string(search.kernel_dimension));
  if (!search.c) {
    out.status = Status::Exhausted;
    out.transcript.push_back("no invertible intertwiner in " + std::to_string(trials) + " trials");
    return out;
  }
  const Vec& c = *search.c;

  // c = [t v; 0 t] with t central in R, so t = tau * 1
  const Vec& unit = r.unit();
  std::size_t pivot = 0;
  while (unit[pivot].is_zero()) ++pivot;
  const FieldElement tau = c[pivot] / unit[pivot];
  for (std::size_t k = 0; k < dr; ++k)
    if (c[k] != tau * unit[k]) throw InternalError("diagonal part of the conjugator is not a scalar");
  out.t = tau;
  out.transcript.push_back("conjugator found at trial " + std::to_string(search.trials_used) + ", t = " +
                           tau.to_string() + " * 1");
  const FieldElement tau_inv = tau.inverse();
  out.raw.assign(dm, zero);
  for (std::size_t q = 0; q < dm; ++q) out.raw[q] = tau_inv * c[dr + q];

  auto check = [&](const Vec& w) {
    for (std::size_t k = 0; k < dr; ++k) {
      const Vec x = r.basis_vector(k);
      Vec rhs = d.m.act_right(w, x);
      const Vec xw = d.m.act_left(x, w);
      for (std::size_t q = 0; q < dm; ++q) rhs[q] -= xw[q];
      if (rhs != d.values[k]) return k;
    }
    return dr;
  };
  if (std::size_t k = check(out.raw); k != dr)
    throw InternalError("t^-1 v fails d(x) = w x - x w at " + r.labels()[k]);

  const auto central = bimodule_centralizer(d.m);
  out.w = central.empty() ? out.raw : Subspace(f, dm, central).reduce(out.raw);
  if (std::size_t k = check(out.w); k != dr) throw InternalError("normalized witness fails at " + r.labels()[k]);
  out.transcript.push_back("w reduced modulo the " + std::to_string(central.size()) +
                           "-dimensional centralizer of R in M");
  out.transcript.push_back("d(x) = w x - x w on every basis element: ok");
  out.status = Status::Inner;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> generated_ideal(const StructAlgebra& a, const Vec& x) {
  std::vector<Vec> span;
  for (std::size_t p = 0; p < a.dimension(); ++p)
    for (std::size_t q = 0; q < a.dimension(); ++q)
      span.push_back(a.multiply(a.multiply(a.basis_vector(p), x), a.basis_vector(q)));
  return Subspace(a.field(), a.dimension(), span).basis();
}

}  // namespace

FlipResult flip_innerness_check(const AlgebraPtr& r, std::uint64_t seed, unsigned trials) {
  const std::size_t d = r->dimension();
  const Field f = r->field();
  const FieldElement zero = FieldElement::zero(f);
  FlipResult out;
  out.seed = seed;
  out.trials = trials;
  out.tensor_square = tensor_product(r, r);
  const auto& t = *out.tensor_square;
  out.center_dimension = center_basis(*r).size();
  const bool csa = verify_central_simple(*r);

  // c (b_k (x) 1) = (1 (x) b_k) c
  std::vector<Vec> phi_images, x_images;
  for (std::size_t k = 0; k < d; ++k) {
    Vec left(d * d, zero), right(d * d, zero);
    for (std::size_t i = 0; i < d; ++i) {
      left[i * d + k] = r->unit()[i];
      right[k * d + i] = r->unit()[i];
    }
    phi_images.push_back(std::move(left));
    x_images.push_back(std::move(right));
  }
  const long bound = static_cast<long>(2 * t.dimension());
  if (auto why = field_size_guard(f, t.dimension())) out.transcript.push_back(*why);
  IntertwinerSearch search = find_invertible_intertwiner(t, phi_images, x_images, seed, trials, bound);
  out.kernel_dimension = search.kernel_dimension;
  out.search_found = search.c.has_value();
  out.transcript.push_back("center dimension " + std::to_string(out.center_dimension) + ", intertwiner space dimension " +
                           std::to_string(search.kernel_dimension));

  if (csa) {
    if (!search.c) {
      out.defect = "central simple, but no invertible intertwiner in " + std::to_string(trials) + " trials";
      return out;
    }
    const Vec one = t.unit();
    if (t.multiply(*search.c, *search.c_inverse) != one || t.multiply(*search.c_inverse, *search.c) != one)
      throw InternalError("flip conjugator inverse check failed");
    for (std::size_t k = 0; k < d; ++k)
      if (t.multiply(*search.c, x_images[k]) != t.multiply(phi_images[k], *search.c))
        throw InternalError("flip conjugator fails on " + r->labels()[k]);
    out.inner = true;
    out.c = search.c;
    out.c_inverse = search.c_inverse;
    out.transcript.push_back("c (x (x) 1) c^-1 = 1 (x) x on every basis element: ok");
    return out;
  }

  if (out.center_dimension > 1) {
    out.defect = "center has dimension " + std::to_string(out.center_dimension);
  } else {
    out.defect = "center is F but the algebra is not simple";
  }
  std::optional<std::vector<Vec>> ideal;
  if (f.p == 0) {
    auto rad = jacobson_radical(*r);
    if (!rad.empty()) ideal = rad;
  }
  for (std::size_t k = 0; !ideal && k < d; ++k) {
    auto span = generated_ideal(*r, r->basis_vector(k));
    if (!span.empty() && span.size() < d) ideal = span;
  }
  out.ideal_witness = ideal;
  if (ideal) out.transcript.push_back("proper two-sided ideal of dimension " + std::to_string(ideal->size()));
  out.transcript.push_back(out.defect);
  return out;
}

}  // namespace snforge
