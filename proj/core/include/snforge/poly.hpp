#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snforge/field.hpp"

namespace snforge {

/// Sparse polynomial in 1..3 variables over a Field.
///
/// Monomials are packed into a 64-bit key: total degree in the top 16 bits,
/// then the exponents of x0, x1, x2 in 16 bits each. Comparing keys as
/// integers is graded lexicographic order with x0 > x1 > x2, and multiplying
/// monomials is adding keys. Terms are stored in strictly descending key
/// order with no zero coefficients, so equal polynomials have identical
/// storage.
class Poly {
 public:
  using Key = std::uint64_t;
  using Term = std::pair<Key, FieldElement>;
  static constexpr std::size_t kMaxVars = 3;
  static constexpr unsigned kMaxExponent = 0xFFFF;

  explicit Poly(Field field = {}, std::size_t nvars = 1);

  static Poly constant(Field field, std::size_t nvars, const FieldElement& c);
  static Poly constant(Field field, std::size_t nvars, long c);
  static Poly variable(Field field, std::size_t nvars, std::size_t var, unsigned exponent = 1);
  static Poly monomial(Field field, std::size_t nvars, const std::vector<unsigned>& exponents,
                       const FieldElement& c);
  /// Builds from (exponents, coefficient) pairs; combines duplicates.
  static Poly from_terms(Field field, std::size_t nvars,
                         const std::vector<std::pair<std::vector<unsigned>, FieldElement>>& terms);
  /// Univariate convenience: coefficients[i] multiplies x^i.
  static Poly from_coefficients(Field field, const std::vector<long>& coefficients);

  static Key pack(const std::vector<unsigned>& exponents);
  static std::vector<unsigned> unpack(Key key, std::size_t nvars);
  static unsigned exponent(Key key, std::size_t var) {
    return static_cast<unsigned>((key >> (32 - 16 * var)) & 0xFFFF);
  }
  static unsigned key_degree(Key key) { return static_cast<unsigned>(key >> 48); }

  Field field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(key_degree(terms_[0].first)); }
  /// Degree in one variable; -1 for zero.
  int degree_in(std::size_t var) const;
  const FieldElement& leading_coefficient() const;
  Key leading_key() const;
  FieldElement constant_term() const;
  /// Coefficient of x^i in a univariate polynomial (zero when absent).
  FieldElement coefficient(unsigned i) const;

  /// Divides by the leading coefficient; zero stays zero.
  Poly monic() const;
  Poly scaled(const FieldElement& c) const;
  /// Multiplies by the monomial with the given key and coefficient.
  Poly shifted(Key key, const FieldElement& c) const;
  /// Coefficient of x_var^k, as a polynomial in the remaining variables.
  Poly coefficient_in(std::size_t var, unsigned k) const;
  FieldElement evaluate(const std::vector<FieldElement>& point) const;

  std::string to_string() const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Poly& other) const;
  static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract);

  Field field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Quotient when b divides a exactly; nullopt otherwise. b must be nonzero.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Univariate division with remainder, a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

struct Xgcd {
  Poly gcd;
  Poly s;
  Poly t;
};
/// Univariate extended Euclid: s*a + t*b = gcd, gcd monic (or zero).
Xgcd xgcd(const Poly& a, const Poly& b);

/// Monic greatest common divisor. Univariate: Euclid. Multivariate:
/// content / primitive-part recursion on the last variable.
Poly gcd(const Poly& a, const Poly& b);

Poly derivative(const Poly& p, std::size_t var = 0);
Poly pow(const Poly& p, unsigned e);
/// Substitutes values[i] for x_i. All values share a ring.
Poly substitute(const Poly& p, const std::vector<Poly>& values);

/// Monic square root of a monic univariate polynomial, when it is a square.
std::optional<Poly> monic_sqrt(const Poly& p);

}  // namespace snforge
