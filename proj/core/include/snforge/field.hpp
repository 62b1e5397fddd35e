#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace snforge {

/// The ground field: the rationals (p == 0) or a prime field F_p.
struct Field {
  std::uint64_t p = 0;

  static Field rationals() { return Field{}; }
  /// Throws DomainError unless p is prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p == 0; }
  std::uint64_t characteristic() const { return p; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;
};

/// Exact element of a Field. Rationals are kept reduced with a positive
/// denominator; residues mod p are kept in [0, p).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field field, mpq_class value);
  FieldElement(Field field, long value);

  static FieldElement zero(Field field) { return FieldElement(field, 0L); }
  static FieldElement one(Field field) { return FieldElement(field, 1L); }
  /// Parses "n" or "n/d" (decimal integers, optional leading '-').
  static FieldElement parse(Field field, std::string_view text);

  Field field() const { return field_; }
  const mpq_class& value() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  FieldElement inverse() const;
  /// A square root in the same field, when one exists.
  std::optional<FieldElement> sqrt() const;

  std::string to_string() const;

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  void reduce();
  void check_same(const FieldElement& other) const;

  Field field_{};
  mpq_class value_{0};
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline FieldElement one_like(const FieldElement& x) { return FieldElement::one(x.field()); }
inline FieldElement zero_like(const FieldElement& x) { return FieldElement::zero(x.field()); }

}  // namespace snforge
