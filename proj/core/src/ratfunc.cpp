#include "snforge/ratfunc.hpp"

#include "snforge/error.hpp"

namespace snforge {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1, 1)) {
  if (num_.nvars() != 1) throw DomainError("rational functions are univariate");
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != 1 || den_.nvars() != 1) throw DomainError("rational functions are univariate");
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), 1, 1);
    return;
  }
  if (!den_.is_constant()) {
    const Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  const FieldElement lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    const FieldElement inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw DomainError("division by zero rational function");
  return RatFunc(den_, num_);
}

std::string RatFunc::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc& RatFunc::operator+=(const RatFunc& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& rhs) { return *this += -rhs; }

RatFunc& RatFunc::operator*=(const RatFunc& rhs) {
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& rhs) { return *this *= rhs.inverse(); }

}  // namespace snforge
