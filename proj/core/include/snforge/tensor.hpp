#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snforge/algebra.hpp"
#include "snforge/ring.hpp"

namespace snforge {

/// Element sum_i b_i (x) s_i of R (x)_F S, stored as the S-coordinates s_i
/// with respect to the basis of R.
class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(AlgebraPtr r, RingPtr s, std::vector<RingElement> coords);

  static TensorElement zero(const AlgebraPtr& r, const RingPtr& s);
  static TensorElement one(const AlgebraPtr& r, const RingPtr& s);
  /// x (x) t.
  static TensorElement pure(const AlgebraPtr& r, const RingPtr& s, const Vec& x, const RingElement& t);
  /// x (x) 1.
  static TensorElement from_r(const AlgebraPtr& r, const RingPtr& s, const Vec& x);
  /// 1 (x) t.
  static TensorElement from_s(const AlgebraPtr& r, const RingElement& t);
  /// b_i (x) 1.
  static TensorElement basis(const AlgebraPtr& r, const RingPtr& s, std::size_t i);

  const AlgebraPtr& r() const { return r_; }
  const RingPtr& s() const { return s_; }
  const std::vector<RingElement>& coords() const { return coords_; }
  const RingElement& coord(std::size_t i) const { return coords_.at(i); }

  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const;

  friend TensorElement operator+(const TensorElement& a, const TensorElement& b);
  friend TensorElement operator-(const TensorElement& a, const TensorElement& b);
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  TensorElement operator-() const;
  friend bool operator==(const TensorElement& a, const TensorElement& b);

 private:
  void check_compatible(const TensorElement& other) const;

  AlgebraPtr r_;
  RingPtr s_;
  std::vector<RingElement> coords_;
};

/// s with u = 1 (x) s, when u has that form.
std::optional<RingElement> unit_part(const TensorElement& u);

/// Matrix over S of left multiplication by u on the S-coordinates:
/// (u x)_m = sum_k M(m, k) x_k with M(m, k) = sum_i gamma(i, k, m) u_i.
Matrix<RingElement> regular_representation(const TensorElement& u);

/// Two-sided inverse in R (x) S, or nullopt when u is not a unit. Throws
/// Unsupported for coefficient rings without an inversion procedure.
std::optional<TensorElement> tensor_invert(const TensorElement& u);

/// F-coordinates of u when S is F or a finite-dimensional algebra; the
/// coordinate of b_i (x) c_m sits at index i * dim(S) + m.
Vec tensor_flatten(const TensorElement& u);
TensorElement tensor_unflatten(const AlgebraPtr& r, const RingPtr& s, const Vec& v);
/// The F-algebra R (x) S for S = F or a finite-dimensional S.
AlgebraPtr tensor_ambient(const AlgebraPtr& r, const RingPtr& s);

}  // namespace snforge
