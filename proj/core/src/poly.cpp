#include "snforge/poly.hpp"

#include <algorithm>
#include <sstream>

#include "snforge/error.hpp"

namespace snforge {

namespace {

bool key_divides(Poly::Key d, Poly::Key k, std::size_t nvars) {
  for (std::size_t v = 0; v < nvars; ++v)
    if (Poly::exponent(d, v) > Poly::exponent(k, v)) return false;
  return true;
}

// Variable with the highest index that occurs in p; -1 for constants.
int last_variable(const Poly& p) {
  int best = -1;
  for (const auto& [k, c] : p.terms())
    for (std::size_t v = 0; v < p.nvars(); ++v)
      if (Poly::exponent(k, v) > 0) best = std::max(best, static_cast<int>(v));
  return best;
}

Poly univariate_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Pseudo-remainder of a by b with respect to x_var.
Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Poly lb = b.coefficient_in(var, static_cast<unsigned>(db));
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const int da = a.degree_in(var);
    const Poly la = a.coefficient_in(var, static_cast<unsigned>(da));
    std::vector<unsigned> e(a.nvars(), 0);
    e[var] = static_cast<unsigned>(da - db);
    const Poly shift = Poly::monomial(a.field(), a.nvars(), e, FieldElement::one(a.field()));
    a = lb * a - la * shift * b;
  }
  return a;
}

Poly gcd_recursive(const Poly& a, const Poly& b, int var);

Poly content_in(const Poly& p, std::size_t var) {
  Poly g(p.field(), p.nvars());
  for (int k = p.degree_in(var); k >= 0; --k) {
    Poly c = p.coefficient_in(var, static_cast<unsigned>(k));
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_recursive(g, c, static_cast<int>(var) - 1);
    if (g.is_constant()) break;
  }
  return g;
}

Poly primitive_part(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  const Poly c = content_in(p, var);
  auto q = divide_exact(p, c);
  if (!q) throw InternalError("content does not divide polynomial");
  return *q;
}

// gcd of nonzero polynomials that only involve x_0 .. x_var.
Poly gcd_recursive(const Poly& a, const Poly& b, int var) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (var < 0 || (a.is_constant() || b.is_constant())) return Poly::constant(a.field(), a.nvars(), 1);
  const auto v = static_cast<std::size_t>(var);
  if (a.degree_in(v) == 0 && b.degree_in(v) == 0) return gcd_recursive(a, b, var - 1);

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly g0 = gcd_recursive(ca, cb, var - 1);

  Poly p = *divide_exact(a, ca);
  Poly q = *divide_exact(b, cb);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
  while (!q.is_zero()) {
    Poly r = pseudo_remainder(p, q, v);
    p = std::move(q);
    q = r.is_zero() ? r : primitive_part(r, v);
  }
  if (p.degree_in(v) == 0) return g0;
  return (g0 * primitive_part(p, v)).monic();
}

}  // namespace

Poly::Poly(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {
  if (nvars == 0 || nvars > kMaxVars)
    throw Unsupported("polynomials support 1.." + std::to_string(kMaxVars) + " variables");
}

Poly::Key Poly::pack(const std::vector<unsigned>& exponents) {
  if (exponents.size() > kMaxVars) throw Unsupported("too many variables in monomial");
  Key key = 0;
  unsigned total = 0;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] > kMaxExponent) throw Unsupported("exponent out of range");
    total += exponents[v];
    key |= static_cast<Key>(exponents[v]) << (32 - 16 * v);
  }
  if (total > kMaxExponent) throw Unsupported("total degree out of range");
  return key | (static_cast<Key>(total) << 48);
}

std::vector<unsigned> Poly::unpack(Key key, std::size_t nvars) {
  std::vector<unsigned> e(nvars);
  for (std::size_t v = 0; v < nvars; ++v) e[v] = exponent(key, v);
  return e;
}

Poly Poly::constant(Field field, std::size_t nvars, const FieldElement& c) {
  Poly p(field, nvars);
  if (!c.is_zero()) p.terms_.emplace_back(0, c);
  return p;
}

Poly Poly::constant(Field field, std::size_t nvars, long c) {
  return constant(field, nvars, FieldElement(field, c));
}

Poly Poly::variable(Field field, std::size_t nvars, std::size_t var, unsigned exponent) {
  std::vector<unsigned> e(nvars, 0);
  if (var >= nvars) throw DomainError("variable index out of range");
  e[var] = exponent;
  return monomial(field, nvars, e, FieldElement::one(field));
}

Poly Poly::monomial(Field field, std::size_t nvars, const std::vector<unsigned>& exponents,
                    const FieldElement& c) {
  if (exponents.size() != nvars) throw DomainError("exponent vector length mismatch");
  Poly p(field, nvars);
  if (!c.is_zero()) p.terms_.emplace_back(pack(exponents), c);
  return p;
}

Poly Poly::from_terms(Field field, std::size_t nvars,
                      const std::vector<std::pair<std::vector<unsigned>, FieldElement>>& terms) {
  Poly p(field, nvars);
  for (const auto& [e, c] : terms) p += monomial(field, nvars, e, c);
  return p;
}

Poly Poly::from_coefficients(Field field, const std::vector<long>& coefficients) {
  Poly p(field, 1);
  for (std::size_t i = coefficients.size(); i-- > 0;)
    if (coefficients[i] != 0) p.terms_.emplace_back(pack({static_cast<unsigned>(i)}), FieldElement(field, coefficients[i]));
  return p;
}

int Poly::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  unsigned d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, exponent(k, var));
  return static_cast<int>(d);
}

const FieldElement& Poly::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return terms_.front().second;
}

Poly::Key Poly::leading_key() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading monomial");
  return terms_.front().first;
}

FieldElement Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().first == 0) return terms_.back().second;
  return FieldElement::zero(field_);
}

FieldElement Poly::coefficient(unsigned i) const {
  const Key k = pack({i});
  for (const auto& [key, c] : terms_)
    if (key == k) return c;
  return FieldElement::zero(field_);
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coefficient().inverse());
}

Poly Poly::scaled(const FieldElement& c) const {
  Poly r(field_, nvars_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) r.terms_.emplace_back(k, v * c);
  return r;
}

Poly Poly::shifted(Key key, const FieldElement& c) const {
  Poly r(field_, nvars_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) r.terms_.emplace_back(k + key, v * c);
  return r;
}

Poly Poly::coefficient_in(std::size_t var, unsigned k) const {
  std::vector<Term> out;
  const Key strip = (static_cast<Key>(k) << (32 - 16 * var)) | (static_cast<Key>(k) << 48);
  for (const auto& [key, c] : terms_)
    if (exponent(key, var) == k) out.emplace_back(key - strip, c);
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
  Poly r(field_, nvars_);
  r.terms_ = std::move(out);
  return r;
}

FieldElement Poly::evaluate(const std::vector<FieldElement>& point) const {
  if (point.size() != nvars_) throw DomainError("evaluation point has wrong length");
  FieldElement acc = FieldElement::zero(field_);
  for (const auto& [k, c] : terms_) {
    FieldElement t = c;
    for (std::size_t v = 0; v < nvars_; ++v)
      for (unsigned e = exponent(k, v); e > 0; --e) t *= point[v];
    acc += t;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[] = {"x", "y", "z"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string coef = c.to_string();
    bool negative = coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < nvars_; ++v) {
      const unsigned e = exponent(k, v);
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += nvars_ == 1 ? "x" : names[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << coef;
    } else {
      if (coef != "1") os << coef << '*';
      os << mono;
    }
  }
  return os.str();
}

void Poly::check_compatible(const Poly& other) const {
  if (!(field_ == other.field_) || nvars_ != other.nvars_)
    throw DomainError("polynomials over different rings");
}

std::vector<Poly::Term> Poly::merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      FieldElement c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  check_compatible(rhs);
  terms_ = merge(terms_, rhs.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  check_compatible(rhs);
  terms_ = merge(terms_, rhs.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.field_, a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<Poly::Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) prods.emplace_back(ka + kb, ca * cb);
  std::stable_sort(prods.begin(), prods.end(),
                   [](const Poly::Term& x, const Poly::Term& y) { return x.first > y.first; });
  for (auto& t : prods) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
      if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
    } else {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly q(a.field(), a.nvars());
  Poly r = a;
  const Poly::Key lk = b.leading_key();
  const FieldElement inv = b.leading_coefficient().inverse();
  while (!r.is_zero()) {
    const Poly::Key rk = r.leading_key();
    if (!key_divides(lk, rk, a.nvars())) return std::nullopt;
    const FieldElement c = r.leading_coefficient() * inv;
    q += Poly::monomial(a.field(), a.nvars(), Poly::unpack(rk - lk, a.nvars()), c);
    r -= b.shifted(rk - lk, c);
  }
  return q;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (a.nvars() != 1 || b.nvars() != 1) throw DomainError("divmod requires univariate polynomials");
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly q(a.field(), 1);
  Poly r = a;
  const int db = b.degree();
  const FieldElement inv = b.leading_coefficient().inverse();
  while (!r.is_zero() && r.degree() >= db) {
    const Poly::Key shift = Poly::pack({static_cast<unsigned>(r.degree() - db)});
    const FieldElement c = r.leading_coefficient() * inv;
    q += Poly::monomial(a.field(), 1, {static_cast<unsigned>(r.degree() - db)}, c);
    r -= b.shifted(shift, c);
  }
  return {std::move(q), std::move(r)};
}

Xgcd xgcd(const Poly& a, const Poly& b) {
  const Field f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f, 1, 1), s1(f, 1);
  Poly t0(f, 1), t1 = Poly::constant(f, 1, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const FieldElement inv = r0.leading_coefficient().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field()) || a.nvars() != b.nvars()) throw DomainError("gcd of polynomials over different rings");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.nvars() == 1) return univariate_gcd(a, b);
  const int var = std::max(last_variable(a), last_variable(b));
  return gcd_recursive(a, b, var).monic();
}

Poly derivative(const Poly& p, std::size_t var) {
  Poly r(p.field(), p.nvars());
  for (const auto& [k, c] : p.terms()) {
    const unsigned e = Poly::exponent(k, var);
    if (e == 0) continue;
    auto ex = Poly::unpack(k, p.nvars());
    ex[var] -= 1;
    r += Poly::monomial(p.field(), p.nvars(), ex, c * FieldElement(p.field(), static_cast<long>(e)));
  }
  return r;
}

Poly pow(const Poly& p, unsigned e) {
  Poly result = Poly::constant(p.field(), p.nvars(), 1);
  Poly base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly substitute(const Poly& p, const std::vector<Poly>& values) {
  if (values.size() != p.nvars()) throw DomainError("substitution needs one value per variable");
  if (values.empty()) return p;
  Poly acc(values[0].field(), values[0].nvars());
  for (const auto& [k, c] : p.terms()) {
    Poly t = Poly::constant(values[0].field(), values[0].nvars(), c);
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      const unsigned e = Poly::exponent(k, v);
      if (e > 0) t = t * pow(values[v], e);
    }
    acc += t;
  }
  return acc;
}

std::optional<Poly> monic_sqrt(const Poly& p) {
  if (p.nvars() != 1) throw DomainError("monic_sqrt requires a univariate polynomial");
  if (p.is_zero()) return p;
  if (!p.leading_coefficient().is_one()) throw DomainError("monic_sqrt requires a monic polynomial");
  if (p.degree() % 2 != 0) return std::nullopt;
  if (p.field().p == 2) throw Unsupported("square roots in characteristic 2");
  const Field f = p.field();
  const unsigned m = static_cast<unsigned>(p.degree() / 2);
  const FieldElement half = FieldElement(f, 2L).inverse();
  Poly r = Poly::variable(f, 1, 0, m);
  for (unsigned k = 1; k <= m; ++k) {
    const Poly diff = p - r * r;
    const FieldElement c = diff.coefficient(2 * m - k) * half;
    r += Poly::monomial(f, 1, {m - k}, c);
  }
  if (r * r == p) return r;
  return std::nullopt;
}

}  // namespace snforge
