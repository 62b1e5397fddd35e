#pragma once

#include <string>

#include "snforge/poly.hpp"

namespace snforge {

/// Element of the rational function field F(x): num/den, coprime, den monic.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  static RatFunc zero(Field field) { return RatFunc(Poly(field, 1)); }
  static RatFunc one(Field field) { return RatFunc(Poly::constant(field, 1, 1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  Field field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc inverse() const;
  std::string to_string() const;

  RatFunc& operator+=(const RatFunc& rhs);
  RatFunc& operator-=(const RatFunc& rhs);
  RatFunc& operator*=(const RatFunc& rhs);
  RatFunc& operator/=(const RatFunc& rhs);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void normalize();

  Poly num_{Field{}, 1};
  Poly den_ = Poly::constant(Field{}, 1, 1);
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline RatFunc one_like(const RatFunc& x) { return RatFunc::one(x.field()); }
inline RatFunc zero_like(const RatFunc& x) { return RatFunc::zero(x.field()); }

}  // namespace snforge
