#include "snforge/ring.hpp"

#include <sstream>

#include "snforge/algebra.hpp"

namespace snforge {

namespace {

void require_same(const RingElement& a, const RingElement& b) {
  if (!a.ring() || !b.ring()) throw DomainError("arithmetic on an uninitialised ring element");
  if (!same_ring(a.ring(), b.ring()))
    throw DomainError("ring mismatch: " + a.ring()->name() + " vs " + b.ring()->name());
}

[[noreturn]] void no_arithmetic(const Ring& r) {
  throw Unsupported("no element arithmetic for " + r.name());
}

std::string join(const std::vector<RingElement>& xs, const char* open, const char* close) {
  std::string s = open;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += xs[i].to_string();
  }
  return s + close;
}

}  // namespace

RingPtr Ring::field(Field f) {
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::field;
  r->field_ = f;
  r->caps_ = {.is_field = true, .has_gcd = true, .is_pid = true, .is_findim = true, .commutative = true, .domain = true};
  return r;
}

RingPtr Ring::polynomial(Field f, std::size_t nvars) {
  if (nvars == 0 || nvars > Poly::kMaxVars)
    throw Unsupported("polynomial rings support 1.." + std::to_string(Poly::kMaxVars) + " variables");
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::polynomial;
  r->field_ = f;
  r->nvars_ = nvars;
  r->caps_ = {.has_gcd = true, .is_pid = nvars == 1, .commutative = true, .domain = true};
  return r;
}

RingPtr Ring::curve(Field f) {
  Poly g = Poly::variable(f, 1, 0, 3) + Poly::variable(f, 1, 0, 1);
  return curve(f, std::move(g));
}

RingPtr Ring::curve(Field f, Poly g) {
  if (f.p == 2) throw DomainError("the curve ring y^2 = g(x) needs characteristic other than 2");
  if (g.field() != f || g.nvars() != 1) throw DomainError("curve polynomial must be univariate over the base field");
  if (g.degree() < 1) throw DomainError("curve polynomial must be nonconstant");
  if (gcd(g, derivative(g)).degree() != 0) throw DomainError("curve polynomial must be squarefree");
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::curve;
  r->field_ = f;
  r->nvars_ = 2;
  r->curve_g_ = std::move(g);
  r->caps_ = {.commutative = true, .domain = true};
  return r;
}

RingPtr Ring::series(RingPtr base, std::size_t order) {
  if (order == 0) throw DomainError("series truncation order must be positive");
  if (base->family() == RingFamily::free_algebra) no_arithmetic(*base);
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::series;
  r->field_ = base->base_field();
  r->order_ = order;
  r->caps_ = {.is_series = true, .commutative = base->caps().commutative, .domain = false};
  r->base_ = std::move(base);
  return r;
}

RingPtr Ring::product(RingPtr first, RingPtr second) {
  if (first->base_field() != second->base_field()) throw DomainError("product of rings over different fields");
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::product;
  r->field_ = first->base_field();
  r->caps_ = {.is_product = true, .commutative = first->caps().commutative && second->caps().commutative};
  r->base_ = std::move(first);
  r->second_ = std::move(second);
  return r;
}

RingPtr Ring::findim(AlgebraPtr algebra) {
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::findim;
  r->field_ = algebra->field();
  r->caps_ = {.is_findim = true, .commutative = algebra->is_commutative()};
  r->algebra_ = std::move(algebra);
  return r;
}

RingPtr Ring::matrix(RingPtr base, std::size_t n) {
  if (n == 0) throw DomainError("matrix ring of size zero");
  if (base->family() == RingFamily::free_algebra) no_arithmetic(*base);
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::matrix;
  r->field_ = base->base_field();
  r->n_ = n;
  r->caps_ = {.is_matrix = true, .commutative = n == 1 && base->caps().commutative};
  r->base_ = std::move(base);
  return r;
}

RingPtr Ring::free_algebra(Field f, std::size_t nvars) {
  std::shared_ptr<Ring> r(new Ring());
  r->family_ = RingFamily::free_algebra;
  r->field_ = f;
  r->nvars_ = nvars;
  return r;
}

std::size_t Ring::dimension() const {
  if (family_ == RingFamily::field) return 1;
  if (family_ == RingFamily::findim) return algebra_->dimension();
  throw DomainError(name() + " is not finite-dimensional");
}

std::string Ring::name() const {
  static const char* vars[] = {"x", "y", "z"};
  const std::string f = field_.name();
  switch (family_) {
    case RingFamily::field:
      return f;
    case RingFamily::polynomial: {
      std::string s = f + "[";
      for (std::size_t i = 0; i < nvars_; ++i) s += (i ? "," : "") + std::string(vars[i]);
      return s + "]";
    }
    case RingFamily::curve:
      return f + "[x,y]/(y^2 - (" + curve_g_.to_string() + "))";
    case RingFamily::series:
      return base_->name() + "[[t]]/(t^" + std::to_string(order_) + ")";
    case RingFamily::product:
      return "(" + base_->name() + ") x (" + second_->name() + ")";
    case RingFamily::findim:
      return f + "-algebra of dimension " + std::to_string(algebra_->dimension());
    case RingFamily::matrix:
      return "M_" + std::to_string(n_) + "(" + base_->name() + ")";
    case RingFamily::free_algebra: {
      std::string s = f + "<";
      for (std::size_t i = 0; i < nvars_; ++i) s += (i ? "," : "") + std::string(i < 3 ? vars[i] : "w");
      return s + ">";
    }
  }
  return f;
}

bool Ring::same_as(const Ring& other) const {
  if (this == &other) return true;
  if (family_ != other.family_ || field_ != other.field_) return false;
  switch (family_) {
    case RingFamily::field:
      return true;
    case RingFamily::polynomial:
    case RingFamily::free_algebra:
      return nvars_ == other.nvars_;
    case RingFamily::curve:
      return curve_g_ == other.curve_g_;
    case RingFamily::series:
      return order_ == other.order_ && base_->same_as(*other.base_);
    case RingFamily::product:
      return base_->same_as(*other.base_) && second_->same_as(*other.second_);
    case RingFamily::findim:
      return algebra_->same_as(*other.algebra_);
    case RingFamily::matrix:
      return n_ == other.n_ && base_->same_as(*other.base_);
  }
  return false;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// Elements

RingElement RingElement::zero(const RingPtr& ring) {
  const Field f = ring->base_field();
  switch (ring->family()) {
    case RingFamily::field:
      return RingElement(ring, FieldElement::zero(f));
    case RingFamily::polynomial:
      return RingElement(ring, Poly(f, ring->nvars()));
    case RingFamily::curve:
      return RingElement(ring, CurveCoords{Poly(f, 1), Poly(f, 1)});
    case RingFamily::series:
      return RingElement(ring, Parts{std::vector<RingElement>(ring->order(), zero(ring->base()))});
    case RingFamily::product:
      return RingElement(ring, Parts{{zero(ring->factor(0)), zero(ring->factor(1))}});
    case RingFamily::findim:
      return RingElement(ring, ring->algebra()->zero_vector());
    case RingFamily::matrix:
      return RingElement(ring, Parts{std::vector<RingElement>(ring->matrix_size() * ring->matrix_size(), zero(ring->base()))});
    case RingFamily::free_algebra:
      break;
  }
  no_arithmetic(*ring);
}

RingElement RingElement::one(const RingPtr& ring) {
  const Field f = ring->base_field();
  switch (ring->family()) {
    case RingFamily::field:
      return RingElement(ring, FieldElement::one(f));
    case RingFamily::polynomial:
      return RingElement(ring, Poly::constant(f, ring->nvars(), 1));
    case RingFamily::curve:
      return RingElement(ring, CurveCoords{Poly::constant(f, 1, 1), Poly(f, 1)});
    case RingFamily::series: {
      RingElement z = zero(ring);
      std::get<Parts>(z.data_).items[0] = one(ring->base());
      return z;
    }
    case RingFamily::product:
      return RingElement(ring, Parts{{one(ring->factor(0)), one(ring->factor(1))}});
    case RingFamily::findim:
      return RingElement(ring, ring->algebra()->unit());
    case RingFamily::matrix: {
      RingElement z = zero(ring);
      const std::size_t n = ring->matrix_size();
      for (std::size_t i = 0; i < n; ++i) std::get<Parts>(z.data_).items[i * n + i] = one(ring->base());
      return z;
    }
    case RingFamily::free_algebra:
      break;
  }
  no_arithmetic(*ring);
}

RingElement RingElement::scalar(const RingPtr& ring, const FieldElement& c) {
  if (c.field() != ring->base_field()) throw DomainError("scalar over the wrong field");
  return scale(c, one(ring));
}

RingElement RingElement::from_poly(const RingPtr& ring, Poly p) {
  if (p.field() != ring->base_field()) throw DomainError("polynomial over the wrong field");
  switch (ring->family()) {
    case RingFamily::polynomial:
      if (p.nvars() != ring->nvars()) throw DomainError("polynomial has the wrong number of variables");
      return RingElement(ring, std::move(p));
    case RingFamily::curve:
      if (p.nvars() != 1) throw DomainError("curve coordinates are univariate polynomials");
      return RingElement(ring, CurveCoords{std::move(p), Poly(ring->base_field(), 1)});
    case RingFamily::field:
      if (!p.is_constant()) throw DomainError("nonconstant polynomial in a field");
      return RingElement(ring, p.constant_term());
    default:
      throw DomainError("cannot build an element of " + ring->name() + " from a polynomial");
  }
}

RingElement RingElement::curve(const RingPtr& ring, Poly a, Poly b) {
  if (ring->family() != RingFamily::curve) throw DomainError(ring->name() + " is not a curve ring");
  for (const Poly* p : {&a, &b})
    if (p->field() != ring->base_field() || p->nvars() != 1)
      throw DomainError("curve coordinates are univariate polynomials over the base field");
  return RingElement(ring, CurveCoords{std::move(a), std::move(b)});
}

RingElement RingElement::series(const RingPtr& ring, std::vector<RingElement> coefficients) {
  if (ring->family() != RingFamily::series) throw DomainError(ring->name() + " is not a series ring");
  if (coefficients.size() > ring->order())
    throw DomainError("series has " + std::to_string(coefficients.size()) + " coefficients but the truncation order is " +
                      std::to_string(ring->order()));
  for (const auto& c : coefficients)
    if (!same_ring(c.ring(), ring->base())) throw DomainError("series coefficient in the wrong ring");
  coefficients.resize(ring->order(), zero(ring->base()));
  for (auto& c : coefficients)
    if (!c.ring()) c = zero(ring->base());
  return RingElement(ring, Parts{std::move(coefficients)});
}

RingElement RingElement::product(const RingPtr& ring, RingElement first, RingElement second) {
  if (ring->family() != RingFamily::product) throw DomainError(ring->name() + " is not a product ring");
  if (!same_ring(first.ring(), ring->factor(0)) || !same_ring(second.ring(), ring->factor(1)))
    throw DomainError("product component in the wrong ring");
  return RingElement(ring, Parts{{std::move(first), std::move(second)}});
}

RingElement RingElement::findim(const RingPtr& ring, std::vector<FieldElement> coords) {
  if (ring->family() == RingFamily::field) {
    if (coords.size() != 1) throw DomainError("field element needs exactly one coordinate");
    return RingElement(ring, coords[0]);
  }
  if (ring->family() != RingFamily::findim) throw DomainError(ring->name() + " is not finite-dimensional");
  if (coords.size() != ring->algebra()->dimension())
    throw DomainError("expected " + std::to_string(ring->algebra()->dimension()) + " coordinates, got " +
                      std::to_string(coords.size()));
  for (const auto& c : coords)
    if (c.field() != ring->base_field()) throw DomainError("coordinate over the wrong field");
  return RingElement(ring, std::move(coords));
}

RingElement RingElement::matrix(const RingPtr& ring, std::vector<RingElement> entries) {
  if (ring->family() != RingFamily::matrix) throw DomainError(ring->name() + " is not a matrix ring");
  const std::size_t n = ring->matrix_size();
  if (entries.size() != n * n) throw DomainError("matrix needs " + std::to_string(n * n) + " entries");
  for (const auto& e : entries)
    if (!same_ring(e.ring(), ring->base())) throw DomainError("matrix entry in the wrong ring");
  return RingElement(ring, Parts{std::move(entries)});
}

const FieldElement& RingElement::field_value() const {
  if (auto p = std::get_if<FieldElement>(&data_)) return *p;
  throw DomainError("element is not a field element");
}

const Poly& RingElement::poly() const {
  if (auto p = std::get_if<Poly>(&data_)) return *p;
  throw DomainError("element is not a polynomial");
}

const RingElement::CurveCoords& RingElement::curve_coords() const {
  if (auto p = std::get_if<CurveCoords>(&data_)) return *p;
  throw DomainError("element is not in a curve ring");
}

const std::vector<RingElement>& RingElement::parts() const {
  if (auto p = std::get_if<Parts>(&data_)) return p->items;
  throw DomainError("element has no components");
}

const std::vector<FieldElement>& RingElement::coords() const {
  if (auto p = std::get_if<std::vector<FieldElement>>(&data_)) return *p;
  throw DomainError("element is not in a finite-dimensional algebra");
}

bool RingElement::is_zero() const {
  return std::visit(
      [](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FieldElement> || std::is_same_v<T, Poly>) {
          return d.is_zero();
        } else if constexpr (std::is_same_v<T, CurveCoords>) {
          return d.a.is_zero() && d.b.is_zero();
        } else if constexpr (std::is_same_v<T, Parts>) {
          for (const auto& x : d.items)
            if (!x.is_zero()) return false;
          return true;
        } else {
          for (const auto& x : d)
            if (!x.is_zero()) return false;
          return true;
        }
      },
      data_);
}

bool RingElement::is_one() const { return *this == one(ring_); }

std::string RingElement::to_string() const {
  if (!ring_) return "<empty>";
  switch (ring_->family()) {
    case RingFamily::field:
      return field_value().to_string();
    case RingFamily::polynomial:
      return poly().to_string();
    case RingFamily::curve: {
      const auto& c = curve_coords();
      if (c.b.is_zero()) return c.a.to_string();
      std::string yb = c.b.is_constant() && c.b.constant_term().is_one() ? "y" : "(" + c.b.to_string() + ")*y";
      if (c.a.is_zero()) return yb;
      return c.a.to_string() + " + " + yb;
    }
    case RingFamily::series:
    case RingFamily::matrix:
      return join(parts(), "[", "]");
    case RingFamily::product:
      return join(parts(), "(", ")");
    case RingFamily::findim: {
      std::string s = "[";
      for (std::size_t i = 0; i < coords().size(); ++i) s += (i ? ", " : "") + coords()[i].to_string();
      return s + "]";
    }
    case RingFamily::free_algebra:
      break;
  }
  return "?";
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  return std::visit(
      [&](const auto& x) -> RingElement {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.data_);
        if constexpr (std::is_same_v<T, FieldElement> || std::is_same_v<T, Poly>) {
          return RingElement(a.ring_, x + y);
        } else if constexpr (std::is_same_v<T, RingElement::CurveCoords>) {
          return RingElement(a.ring_, RingElement::CurveCoords{x.a + y.a, x.b + y.b});
        } else if constexpr (std::is_same_v<T, RingElement::Parts>) {
          RingElement::Parts out{x.items};
          for (std::size_t i = 0; i < out.items.size(); ++i) out.items[i] = out.items[i] + y.items[i];
          return RingElement(a.ring_, std::move(out));
        } else {
          std::vector<FieldElement> out = x;
          for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
          return RingElement(a.ring_, std::move(out));
        }
      },
      a.data_);
}

RingElement RingElement::operator-() const {
  return std::visit(
      [&](const auto& x) -> RingElement {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FieldElement> || std::is_same_v<T, Poly>) {
          return RingElement(ring_, -x);
        } else if constexpr (std::is_same_v<T, CurveCoords>) {
          return RingElement(ring_, CurveCoords{-x.a, -x.b});
        } else if constexpr (std::is_same_v<T, Parts>) {
          Parts out{x.items};
          for (auto& p : out.items) p = -p;
          return RingElement(ring_, std::move(out));
        } else {
          std::vector<FieldElement> out = x;
          for (auto& c : out) c = -c;
          return RingElement(ring_, std::move(out));
        }
      },
      data_);
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  const RingPtr& r = a.ring_;
  switch (r->family()) {
    case RingFamily::field:
      return RingElement(r, a.field_value() * b.field_value());
    case RingFamily::polynomial:
      return RingElement(r, a.poly() * b.poly());
    case RingFamily::curve:
      return curve_mul(a, b);
    case RingFamily::series: {
      const auto& x = a.parts();
      const auto& y = b.parts();
      const std::size_t n = r->order();
      std::vector<RingElement> out(n, RingElement::zero(r->base()));
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j)
          if (!y[j].is_zero()) out[i + j] += x[i] * y[j];
      }
      return RingElement(r, RingElement::Parts{std::move(out)});
    }
    case RingFamily::product:
      return RingElement(r, RingElement::Parts{{a.parts()[0] * b.parts()[0], a.parts()[1] * b.parts()[1]}});
    case RingFamily::findim:
      return RingElement(r, r->algebra()->multiply(a.coords(), b.coords()));
    case RingFamily::matrix: {
      const std::size_t n = r->matrix_size();
      const auto& x = a.parts();
      const auto& y = b.parts();
      std::vector<RingElement> out(n * n, RingElement::zero(r->base()));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          if (x[i * n + k].is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j)
            if (!y[k * n + j].is_zero()) out[i * n + j] += x[i * n + k] * y[k * n + j];
        }
      return RingElement(r, RingElement::Parts{std::move(out)});
    }
    case RingFamily::free_algebra:
      break;
  }
  no_arithmetic(*r);
}

bool operator==(const RingElement& a, const RingElement& b) {
  if (!a.ring_ || !b.ring_) return !a.ring_ && !b.ring_;
  return same_ring(a.ring_, b.ring_) && a.data_ == b.data_;
}

RingElement scale(const FieldElement& c, const RingElement& u) {
  const RingPtr& r = u.ring();
  switch (r->family()) {
    case RingFamily::field:
      return RingElement::findim(r, {c * u.field_value()});
    case RingFamily::polynomial:
      return RingElement::from_poly(r, u.poly().scaled(c));
    case RingFamily::curve:
      return RingElement::curve(r, u.curve_coords().a.scaled(c), u.curve_coords().b.scaled(c));
    case RingFamily::series: {
      std::vector<RingElement> out;
      for (const auto& p : u.parts()) out.push_back(scale(c, p));
      return RingElement::series(r, std::move(out));
    }
    case RingFamily::product:
      return RingElement::product(r, scale(c, u.parts()[0]), scale(c, u.parts()[1]));
    case RingFamily::findim: {
      std::vector<FieldElement> out = u.coords();
      for (auto& x : out) x *= c;
      return RingElement::findim(r, std::move(out));
    }
    case RingFamily::matrix: {
      std::vector<RingElement> out;
      for (const auto& p : u.parts()) out.push_back(scale(c, p));
      return RingElement::matrix(r, std::move(out));
    }
    case RingFamily::free_algebra:
      break;
  }
  no_arithmetic(*r);
}

std::optional<FieldElement> as_scalar(const RingElement& u) {
  const RingPtr& r = u.ring();
  if (r->family() == RingFamily::field) return u.field_value();
  if (r->family() == RingFamily::polynomial) {
    if (!u.poly().is_constant()) return std::nullopt;
    return u.poly().constant_term();
  }
  if (r->family() == RingFamily::curve) {
    const auto& c = u.curve_coords();
    if (!c.b.is_zero() || !c.a.is_constant()) return std::nullopt;
    return c.a.constant_term();
  }
  if (r->family() == RingFamily::findim) {
    const auto& unit = r->algebra()->unit();
    std::size_t i0 = 0;
    while (unit[i0].is_zero()) ++i0;
    const FieldElement lambda = u.coords()[i0] / unit[i0];
    if (scale(lambda, RingElement::one(r)) != u) return std::nullopt;
    return lambda;
  }
  if (r->family() == RingFamily::free_algebra) no_arithmetic(*r);
  // series, products and matrices all carry a unit in their first part
  auto lambda = as_scalar(u.parts()[0]);
  if (!lambda || scale(*lambda, RingElement::one(r)) != u) return std::nullopt;
  return lambda;
}

// Curve ring

RingElement curve_mul(const RingElement& u, const RingElement& v) {
  const auto& x = u.curve_coords();
  const auto& y = v.curve_coords();
  const Poly& g = u.ring()->curve_g();
  return RingElement::curve(u.ring(), x.a * y.a + x.b * y.b * g, x.a * y.b + x.b * y.a);
}

Poly curve_norm(const RingElement& u) {
  const auto& c = u.curve_coords();
  return c.a * c.a - c.b * c.b * u.ring()->curve_g();
}

bool curve_is_unit(const RingElement& u) {
  const Poly n = curve_norm(u);
  return !n.is_zero() && n.is_constant();
}

std::optional<RingElement> curve_divide(const RingElement& num, const RingElement& den) {
  require_same(num, den);
  if (den.is_zero()) throw DomainError("division by zero in the curve ring");
  // den * conj(den) = N(den), so a quotient q must equal num * conj(den) / N(den).
  const auto& d = den.curve_coords();
  const RingElement conj = RingElement::curve(den.ring(), d.a, -d.b);
  const RingElement t = curve_mul(num, conj);
  const Poly n = curve_norm(den);
  auto qa = divide_exact(t.curve_coords().a, n);
  auto qb = divide_exact(t.curve_coords().b, n);
  if (!qa || !qb) return std::nullopt;
  RingElement q = RingElement::curve(den.ring(), std::move(*qa), std::move(*qb));
  if (curve_mul(den, q) != num) throw InternalError("curve division check failed");
  return q;
}

// Series

RingElement series_invert(const RingElement& u) {
  const RingPtr& r = u.ring();
  if (r->family() != RingFamily::series) throw DomainError("series_invert on " + r->name());
  const auto& c = u.parts();
  auto v0 = ring_inverse(c[0]);
  if (!v0) throw NotInvertible("constant coefficient " + c[0].to_string() + " is not a unit of " + r->base()->name());
  const std::size_t n = r->order();
  std::vector<RingElement> v{*v0};
  for (std::size_t k = 1; k < n; ++k) {
    RingElement acc = RingElement::zero(r->base());
    for (std::size_t i = 1; i <= k; ++i)
      if (!c[i].is_zero()) acc += c[i] * v[k - i];
    v.push_back(-(*v0 * acc));
  }
  RingElement inv = RingElement::series(r, std::move(v));
  if (!(u * inv).is_one() || !(inv * u).is_one()) throw InternalError("series inverse check failed");
  return inv;
}

RingElement series_truncate(const RingElement& u, const RingPtr& target) {
  if (u.ring()->family() != RingFamily::series || target->family() != RingFamily::series)
    throw DomainError("series_truncate needs series rings");
  if (target->order() > u.ring()->order() || !same_ring(target->base(), u.ring()->base()))
    throw DomainError("cannot truncate " + u.ring()->name() + " to " + target->name());
  std::vector<RingElement> c(u.parts().begin(), u.parts().begin() + static_cast<long>(target->order()));
  return RingElement::series(target, std::move(c));
}

// Units, division, gcd

namespace {

std::optional<RingElement> matrix_inverse(const RingElement& u) {
  const RingPtr& r = u.ring();
  const RingPtr& base = r->base();
  const std::size_t n = r->matrix_size();
  Matrix<RingElement> m(n, n, RingElement::zero(base));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u.parts()[i * n + j];
  std::vector<RingElement> entries(n * n, RingElement::zero(base));
  const RingFamily bf = base->family();
  if (bf == RingFamily::field || bf == RingFamily::polynomial || bf == RingFamily::curve) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<RingElement> e(n, RingElement::zero(base));
      e[j] = RingElement::one(base);
      const BareissSolution s = bareiss_solve(m, e);
      if (s.determinant.is_zero()) return std::nullopt;
      auto dinv = ring_inverse(s.determinant);
      if (!dinv) return std::nullopt;
      for (std::size_t i = 0; i < n; ++i) entries[i * n + j] = *dinv * s.adjugate_rhs[i];
    }
  } else {
    // Gauss-Jordan with unit pivots; enough for local rings such as series
    // over a field.
    Matrix<RingElement> inv = Matrix<RingElement>::identity(n, RingElement::zero(base));
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      std::optional<RingElement> pinv;
      for (; p < n; ++p)
        if ((pinv = ring_inverse(m(p, k)))) break;
      if (p == n) {
        if (base->caps().commutative) {
          const RingElement det = ring_determinant(m);
          if (!ring_is_unit(det)) return std::nullopt;
        }
        throw Unsupported("matrix inversion over " + base->name() + " without a unit pivot");
      }
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(k, j));
        std::swap(inv(p, j), inv(k, j));
      }
      for (std::size_t j = 0; j < n; ++j) {
        m(k, j) = *pinv * m(k, j);
        inv(k, j) = *pinv * inv(k, j);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k || m(i, k).is_zero()) continue;
        const RingElement f = m(i, k);
        for (std::size_t j = 0; j < n; ++j) {
          m(i, j) -= f * m(k, j);
          inv(i, j) -= f * inv(k, j);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = inv(i, j);
  }
  return RingElement::matrix(r, std::move(entries));
}

}  // namespace

std::optional<RingElement> ring_inverse(const RingElement& u) {
  const RingPtr& r = u.ring();
  std::optional<RingElement> inv;
  switch (r->family()) {
    case RingFamily::field:
      if (u.is_zero()) return std::nullopt;
      return RingElement::findim(r, {u.field_value().inverse()});
    case RingFamily::polynomial:
      if (u.is_zero() || !u.poly().is_constant()) return std::nullopt;
      return RingElement::scalar(r, u.poly().constant_term().inverse());
    case RingFamily::curve: {
      if (!curve_is_unit(u)) return std::nullopt;
      inv = curve_divide(RingElement::one(r), u);
      break;
    }
    case RingFamily::series:
      if (!ring_is_unit(u.parts()[0])) return std::nullopt;
      return series_invert(u);
    case RingFamily::product: {
      auto a = ring_inverse(u.parts()[0]);
      if (!a) return std::nullopt;
      auto b = ring_inverse(u.parts()[1]);
      if (!b) return std::nullopt;
      return RingElement::product(r, std::move(*a), std::move(*b));
    }
    case RingFamily::findim: {
      const auto& alg = *r->algebra();
      const FieldElement zero = FieldElement::zero(r->base_field());
      auto x = solve_vector(alg.left_matrix(u.coords()), alg.unit(), zero);
      if (!x) return std::nullopt;
      inv = RingElement::findim(r, std::move(*x));
      break;
    }
    case RingFamily::matrix:
      inv = matrix_inverse(u);
      if (!inv) return std::nullopt;
      break;
    case RingFamily::free_algebra:
      no_arithmetic(*r);
  }
  if (!inv || !(u * *inv).is_one() || !(*inv * u).is_one()) return std::nullopt;
  return inv;
}

bool ring_is_unit(const RingElement& u) { return ring_inverse(u).has_value(); }

std::optional<RingElement> ring_divide(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  const RingPtr& r = a.ring();
  if (b.is_zero()) throw DomainError("division by zero");
  switch (r->family()) {
    case RingFamily::field:
      return RingElement::findim(r, {a.field_value() / b.field_value()});
    case RingFamily::polynomial: {
      auto q = divide_exact(a.poly(), b.poly());
      if (!q) return std::nullopt;
      return RingElement::from_poly(r, std::move(*q));
    }
    case RingFamily::curve:
      return curve_divide(a, b);
    default:
      throw Unsupported("exact division in " + r->name());
  }
}

RingElement ring_gcd(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  const RingPtr& r = a.ring();
  switch (r->family()) {
    case RingFamily::field:
      return a.is_zero() && b.is_zero() ? RingElement::zero(r) : RingElement::one(r);
    case RingFamily::polynomial:
      return RingElement::from_poly(r, gcd(a.poly(), b.poly()));
    default:
      throw Unsupported("gcd in " + r->name());
  }
}

// Determinants

namespace {

bool has_exact_division(const RingPtr& r) {
  return r->family() == RingFamily::field || r->family() == RingFamily::polynomial ||
         r->family() == RingFamily::curve;
}

RingElement exact_quotient(const RingElement& a, const RingElement& b) {
  auto q = ring_divide(a, b);
  if (!q) throw InternalError("fraction-free elimination produced an inexact division");
  return *q;
}

RingElement bareiss_determinant(Matrix<RingElement> m) {
  const std::size_t n = m.rows();
  const RingPtr r = m(0, 0).ring();
  RingElement prev = RingElement::one(r);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return RingElement::zero(r);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = exact_quotient(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = RingElement::zero(r);
    }
    prev = m(k, k);
  }
  RingElement det = m(n - 1, n - 1);
  return negate ? -det : det;
}

// Division-free characteristic polynomial; returns det.
RingElement berkowitz_determinant(const Matrix<RingElement>& m0) {
  const std::size_t n0 = m0.rows();
  const RingPtr r = m0(0, 0).ring();
  const RingElement zero = RingElement::zero(r);
  std::vector<Matrix<RingElement>> transforms;
  Matrix<RingElement> a = m0;
  while (a.rows() > 1) {
    const std::size_t n = a.rows();
    Matrix<RingElement> t(n + 1, n, zero);
    Matrix<RingElement> sub(n - 1, n - 1, zero);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j) sub(i - 1, j - 1) = a(i, j);
    std::vector<RingElement> row, col;
    for (std::size_t j = 1; j < n; ++j) row.push_back(-a(0, j));
    for (std::size_t i = 1; i < n; ++i) col.push_back(a(i, 0));
    std::vector<RingElement> items{RingElement::one(r), -a(0, 0)};
    std::vector<RingElement> power = col;
    for (std::size_t s = 0; s + 1 < n; ++s) {
      RingElement dot = zero;
      for (std::size_t i = 0; i < n - 1; ++i) dot += row[i] * power[i];
      items.push_back(dot);
      if (s + 2 < n) power = sub.apply(power);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; i + k <= n; ++k) t(i + k, i) = items[k];
    transforms.push_back(std::move(t));
    a = std::move(sub);
  }
  std::vector<RingElement> poly{RingElement::one(r), -a(0, 0)};
  for (auto it = transforms.rbegin(); it != transforms.rend(); ++it) poly = it->apply(poly);
  RingElement c = poly.back();
  return n0 % 2 == 0 ? c : -c;
}

}  // namespace

RingElement ring_determinant(const Matrix<RingElement>& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (m.rows() == 0) throw DomainError("determinant of an empty matrix");
  const RingPtr r = m(0, 0).ring();
  if (!r->caps().commutative) throw Unsupported("determinant over the noncommutative ring " + r->name());
  if (r->caps().domain && has_exact_division(r)) return bareiss_determinant(m);
  return berkowitz_determinant(m);
}

BareissSolution bareiss_solve(const Matrix<RingElement>& m0, const std::vector<RingElement>& rhs) {
  const std::size_t n = m0.rows();
  if (n == 0 || m0.cols() != n || rhs.size() != n) throw DomainError("bareiss_solve needs a square system");
  const RingPtr r = m0(0, 0).ring();
  if (!r->caps().domain || !has_exact_division(r)) throw Unsupported("fraction-free elimination over " + r->name());
  Matrix<RingElement> m(n, n + 1, RingElement::zero(r));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = m0(i, j);
    m(i, n) = rhs[i];
  }
  RingElement prev = RingElement::one(r);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return {RingElement::zero(r), {}};
    if (p != k) {
      for (std::size_t j = 0; j <= n; ++j) std::swap(m(p, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == k) continue;
        m(i, j) = exact_quotient(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      }
      m(i, k) = RingElement::zero(r);
    }
    prev = m(k, k);
  }
  BareissSolution s{negate ? -prev : prev, {}};
  for (std::size_t i = 0; i < n; ++i) s.adjugate_rhs.push_back(negate ? -m(i, n) : m(i, n));
  return s;
}

}  // namespace snforge
