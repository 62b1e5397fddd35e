#include "snforge/field.hpp"

#include <cctype>

#include "snforge/error.hpp"

namespace snforge {

namespace {

mpz_class modulus(std::uint64_t p) {
  mpz_class m;
  mpz_import(m.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  return m;
}

// Tonelli-Shanks; p odd prime, a a nonzero quadratic residue.
mpz_class sqrt_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

  mpz_class m = s, c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long k = 0; k + i + 1 < m.get_ui(); ++k) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || mpz_probab_prime_p(modulus(p).get_mpz_t(), 30) == 0)
    throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  return Field{p};
}

std::string Field::name() const {
  return p == 0 ? std::string("Q") : "F_" + std::to_string(p);
}

FieldElement::FieldElement(Field field, mpq_class value) : field_(field), value_(std::move(value)) {
  reduce();
}

FieldElement::FieldElement(Field field, long value) : field_(field), value_(value) { reduce(); }

void FieldElement::reduce() {
  value_.canonicalize();
  if (field_.p == 0) return;
  const mpz_class m = modulus(field_.p);
  mpz_class num = value_.get_num() % m;
  if (num < 0) num += m;
  if (value_.get_den() != 1) {
    mpz_class den = value_.get_den() % m;
    if (den == 0) throw DomainError("denominator vanishes in " + field_.name());
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    num = (num * inv) % m;
  }
  value_ = mpq_class(num);
}

void FieldElement::check_same(const FieldElement& other) const {
  if (!(field_ == other.field_))
    throw DomainError("field mismatch: " + field_.name() + " vs " + other.field_.name());
}

FieldElement FieldElement::parse(Field field, std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-')
    throw InputError("malformed rational literal \"" + std::string(text) + "\"");
  mpq_class q;
  q.get_num() = mpz_class(std::string(num));
  q.get_den() = mpz_class(std::string(den));
  if (q.get_den() == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  return FieldElement(field, q);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("division by zero in " + field_.name());
  if (field_.p == 0) return FieldElement(field_, 1 / value_);
  const mpz_class m = modulus(field_.p);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), m.get_mpz_t());
  return FieldElement(field_, mpq_class(inv));
}

std::optional<FieldElement> FieldElement::sqrt() const {
  if (is_zero()) return *this;
  if (field_.p == 0) {
    if (sgn(value_) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(value_.get_num_mpz_t()) || !mpz_perfect_square_p(value_.get_den_mpz_t()))
      return std::nullopt;
    mpq_class r;
    mpz_sqrt(r.get_num_mpz_t(), value_.get_num_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), value_.get_den_mpz_t());
    return FieldElement(field_, r);
  }
  if (field_.p == 2) return *this;
  const mpz_class m = modulus(field_.p);
  const mpz_class a = value_.get_num();
  if (mpz_legendre(a.get_mpz_t(), m.get_mpz_t()) != 1) return std::nullopt;
  return FieldElement(field_, mpq_class(sqrt_mod(a, m)));
}

std::string FieldElement::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  check_same(rhs);
  value_ += rhs.value_;
  if (field_.p != 0) reduce();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  check_same(rhs);
  value_ -= rhs.value_;
  if (field_.p != 0) reduce();
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  check_same(rhs);
  value_ *= rhs.value_;
  if (field_.p != 0) reduce();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  check_same(rhs);
  return *this *= rhs.inverse();
}

FieldElement FieldElement::operator-() const {
  FieldElement r(*this);
  r.value_ = -r.value_;
  if (field_.p != 0) r.reduce();
  return r;
}

}  // namespace snforge
