#include "snforge/tensor.hpp"

#include <map>
#include <mutex>

namespace snforge {

namespace {

// Small cache of tensor product algebras; backends ask for the same ambient
// algebra many times during one solve.
AlgebraPtr cached_tensor(const AlgebraPtr& a, const AlgebraPtr& b) {
  static std::mutex mu;
  static std::map<std::pair<const void*, const void*>, std::pair<std::pair<AlgebraPtr, AlgebraPtr>, AlgebraPtr>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(static_cast<const void*>(a.get()), static_cast<const void*>(b.get()));
  if (auto it = cache.find(key); it != cache.end()) return it->second.second;
  if (cache.size() > 64) cache.clear();
  AlgebraPtr t = tensor_product(a, b);
  cache.emplace(key, std::make_pair(std::make_pair(a, b), t));
  return t;
}

AlgebraPtr cached_matrix_algebra(Field f, std::size_t n) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::size_t>, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{f.p, n}];
  if (!slot) slot = matrix_algebra(f, n);
  return slot;
}

std::optional<TensorElement> checked(const TensorElement& u, TensorElement inv) {
  if (!(u * inv).is_one() || !(inv * u).is_one()) return std::nullopt;
  return inv;
}

std::optional<TensorElement> invert_linear(const TensorElement& u) {
  const AlgebraPtr amb = tensor_ambient(u.r(), u.s());
  auto x = solve_vector(amb->left_matrix(tensor_flatten(u)), amb->unit(), FieldElement::zero(amb->field()));
  if (!x) return std::nullopt;
  return checked(u, tensor_unflatten(u.r(), u.s(), *x));
}

std::optional<TensorElement> invert_domain(const TensorElement& u) {
  const Matrix<RingElement> m = regular_representation(u);
  std::vector<RingElement> e = TensorElement::one(u.r(), u.s()).coords();
  const BareissSolution sol = bareiss_solve(m, e);
  if (sol.determinant.is_zero()) return std::nullopt;
  auto dinv = ring_inverse(sol.determinant);
  if (!dinv) return std::nullopt;
  std::vector<RingElement> coords;
  for (const auto& y : sol.adjugate_rhs) coords.push_back(*dinv * y);
  return checked(u, TensorElement(u.r(), u.s(), std::move(coords)));
}

// Series coefficient n of u, as an element of R (x) S0.
TensorElement series_coefficient(const TensorElement& u, std::size_t n) {
  std::vector<RingElement> c;
  for (const auto& x : u.coords()) c.push_back(x.parts()[n]);
  return TensorElement(u.r(), u.s()->base(), std::move(c));
}

std::optional<TensorElement> invert_series(const TensorElement& u) {
  const RingPtr& s = u.s();
  const std::size_t n = s->order();
  std::vector<TensorElement> uc;
  for (std::size_t k = 0; k < n; ++k) uc.push_back(series_coefficient(u, k));
  auto v0 = tensor_invert(uc[0]);
  if (!v0) return std::nullopt;
  std::vector<TensorElement> v{*v0};
  for (std::size_t k = 1; k < n; ++k) {
    TensorElement acc = TensorElement::zero(u.r(), s->base());
    for (std::size_t i = 1; i <= k; ++i)
      if (!uc[i].is_zero()) acc = acc + uc[i] * v[k - i];
    v.push_back(-(*v0 * acc));
  }
  std::vector<RingElement> coords;
  for (std::size_t i = 0; i < u.r()->dimension(); ++i) {
    std::vector<RingElement> series;
    for (std::size_t k = 0; k < n; ++k) series.push_back(v[k].coord(i));
    coords.push_back(RingElement::series(s, std::move(series)));
  }
  return checked(u, TensorElement(u.r(), s, std::move(coords)));
}

std::optional<TensorElement> invert_product(const TensorElement& u) {
  const RingPtr& s = u.s();
  std::vector<RingElement> c0, c1;
  for (const auto& x : u.coords()) {
    c0.push_back(x.parts()[0]);
    c1.push_back(x.parts()[1]);
  }
  auto a = tensor_invert(TensorElement(u.r(), s->factor(0), std::move(c0)));
  if (!a) return std::nullopt;
  auto b = tensor_invert(TensorElement(u.r(), s->factor(1), std::move(c1)));
  if (!b) return std::nullopt;
  std::vector<RingElement> coords;
  for (std::size_t i = 0; i < u.r()->dimension(); ++i)
    coords.push_back(RingElement::product(s, a->coord(i), b->coord(i)));
  return checked(u, TensorElement(u.r(), s, std::move(coords)));
}

// R (x) M_n(A) = (R (x) M_n(F)) (x) A, basis b_l (x) e_ij at l*n^2 + i*n + j.
std::optional<TensorElement> invert_matrix(const TensorElement& u) {
  const RingPtr& s = u.s();
  const RingPtr& a = s->base();
  const std::size_t n = s->matrix_size(), n2 = n * n, d = u.r()->dimension();
  const AlgebraPtr rm = cached_tensor(u.r(), cached_matrix_algebra(s->base_field(), n));
  std::vector<RingElement> flat;
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t t = 0; t < n2; ++t) flat.push_back(u.coord(l).parts()[t]);
  auto inv = tensor_invert(TensorElement(rm, a, std::move(flat)));
  if (!inv) return std::nullopt;
  std::vector<RingElement> coords;
  for (std::size_t l = 0; l < d; ++l) {
    std::vector<RingElement> entries(inv->coords().begin() + static_cast<long>(l * n2),
                                     inv->coords().begin() + static_cast<long>((l + 1) * n2));
    coords.push_back(RingElement::matrix(s, std::move(entries)));
  }
  return checked(u, TensorElement(u.r(), s, std::move(coords)));
}

}  // namespace

TensorElement::TensorElement(AlgebraPtr r, RingPtr s, std::vector<RingElement> coords)
    : r_(std::move(r)), s_(std::move(s)), coords_(std::move(coords)) {
  if (coords_.size() != r_->dimension())
    throw DomainError("tensor element needs " + std::to_string(r_->dimension()) + " coordinates, got " +
                      std::to_string(coords_.size()));
  if (s_->base_field() != r_->field()) throw DomainError("R and S are over different fields");
  for (const auto& c : coords_)
    if (!same_ring(c.ring(), s_)) throw DomainError("tensor coordinate in the wrong ring");
}

TensorElement TensorElement::zero(const AlgebraPtr& r, const RingPtr& s) {
  return TensorElement(r, s, std::vector<RingElement>(r->dimension(), RingElement::zero(s)));
}

TensorElement TensorElement::one(const AlgebraPtr& r, const RingPtr& s) { return from_r(r, s, r->unit()); }

TensorElement TensorElement::pure(const AlgebraPtr& r, const RingPtr& s, const Vec& x, const RingElement& t) {
  std::vector<RingElement> c;
  for (const auto& xi : x) c.push_back(xi.is_zero() ? RingElement::zero(s) : scale(xi, t));
  return TensorElement(r, s, std::move(c));
}

TensorElement TensorElement::from_r(const AlgebraPtr& r, const RingPtr& s, const Vec& x) {
  return pure(r, s, x, RingElement::one(s));
}

TensorElement TensorElement::from_s(const AlgebraPtr& r, const RingElement& t) { return pure(r, t.ring(), r->unit(), t); }

TensorElement TensorElement::basis(const AlgebraPtr& r, const RingPtr& s, std::size_t i) {
  return from_r(r, s, r->basis_vector(i));
}

void TensorElement::check_compatible(const TensorElement& other) const {
  if (!r_ || !other.r_) throw DomainError("arithmetic on an empty tensor element");
  if (!(r_ == other.r_ || r_->same_as(*other.r_)) || !same_ring(s_, other.s_))
    throw DomainError("tensor elements from different rings");
}

bool TensorElement::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool TensorElement::is_one() const { return *this == one(r_, s_); }

std::string TensorElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += r_->labels()[i] + "*(" + coords_[i].to_string() + ")";
  }
  return out.empty() ? "0" : out;
}

TensorElement operator+(const TensorElement& a, const TensorElement& b) {
  a.check_compatible(b);
  std::vector<RingElement> c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return TensorElement(a.r_, a.s_, std::move(c));
}

TensorElement operator-(const TensorElement& a, const TensorElement& b) {
  a.check_compatible(b);
  std::vector<RingElement> c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
  return TensorElement(a.r_, a.s_, std::move(c));
}

TensorElement TensorElement::operator-() const {
  std::vector<RingElement> c;
  for (const auto& x : coords_) c.push_back(-x);
  return TensorElement(r_, s_, std::move(c));
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
  a.check_compatible(b);
  const auto& r = *a.r_;
  const std::size_t d = r.dimension();
  std::vector<RingElement> c(d, RingElement::zero(a.s_));
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const auto& entries = r.product(i, j);
      if (entries.empty() || b.coords_[j].is_zero()) continue;
      const RingElement st = a.coords_[i] * b.coords_[j];
      for (const auto& e : entries) c[e.index] += scale(e.value, st);
    }
  }
  return TensorElement(a.r_, a.s_, std::move(c));
}

bool operator==(const TensorElement& a, const TensorElement& b) {
  if (!a.r_ || !b.r_) return !a.r_ && !b.r_;
  return (a.r_ == b.r_ || a.r_->same_as(*b.r_)) && same_ring(a.s_, b.s_) && a.coords_ == b.coords_;
}

std::optional<RingElement> unit_part(const TensorElement& u) {
  const Vec& e = u.r()->unit();
  std::size_t i0 = 0;
  while (e[i0].is_zero()) ++i0;
  const RingElement s = scale(e[i0].inverse(), u.coord(i0));
  if (TensorElement::from_s(u.r(), s) != u) return std::nullopt;
  return s;
}

Matrix<RingElement> regular_representation(const TensorElement& u) {
  const auto& r = *u.r();
  const std::size_t d = r.dimension();
  Matrix<RingElement> m(d, d, RingElement::zero(u.s()));
  for (std::size_t i = 0; i < d; ++i) {
    if (u.coord(i).is_zero()) continue;
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& e : r.product(i, k)) m(e.index, k) += scale(e.value, u.coord(i));
  }
  return m;
}

std::optional<TensorElement> tensor_invert(const TensorElement& u) {
  switch (u.s()->family()) {
    case RingFamily::field:
    case RingFamily::findim:
      return invert_linear(u);
    case RingFamily::polynomial:
    case RingFamily::curve:
      return invert_domain(u);
    case RingFamily::series:
      return invert_series(u);
    case RingFamily::product:
      return invert_product(u);
    case RingFamily::matrix:
      return invert_matrix(u);
    case RingFamily::free_algebra:
      break;
  }
  throw Unsupported("no inversion procedure in R (x) " + u.s()->name());
}

AlgebraPtr tensor_ambient(const AlgebraPtr& r, const RingPtr& s) {
  if (s->family() == RingFamily::field) return r;
  if (s->family() == RingFamily::findim) return cached_tensor(r, s->algebra());
  throw DomainError(s->name() + " is not finite-dimensional");
}

Vec tensor_flatten(const TensorElement& u) {
  if (u.s()->family() == RingFamily::field) {
    Vec v;
    for (const auto& c : u.coords()) v.push_back(c.field_value());
    return v;
  }
  Vec v;
  for (const auto& c : u.coords()) v.insert(v.end(), c.coords().begin(), c.coords().end());
  return v;
}

TensorElement tensor_unflatten(const AlgebraPtr& r, const RingPtr& s, const Vec& v) {
  const std::size_t ds = s->dimension();
  if (v.size() != r->dimension() * ds) throw DomainError("flattened tensor has the wrong length");
  std::vector<RingElement> coords;
  for (std::size_t i = 0; i < r->dimension(); ++i)
    coords.push_back(RingElement::findim(s, Vec(v.begin() + static_cast<long>(i * ds), v.begin() + static_cast<long>((i + 1) * ds))));
  return TensorElement(r, s, std::move(coords));
}

}  // namespace snforge
