#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "snforge/error.hpp"
#include "snforge/field.hpp"
#include "snforge/linalg.hpp"
#include "snforge/poly.hpp"

namespace snforge {

class StructAlgebra;
using AlgebraPtr = std::shared_ptr<const StructAlgebra>;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Raised when an element that must be a unit is not.
class NotInvertible : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class RingFamily { field, polynomial, curve, series, product, findim, matrix, free_algebra };

/// Capability flags; the backends dispatch on these.
struct RingCaps {
  bool is_field = false;
  bool has_gcd = false;
  bool is_pid = false;
  bool is_findim = false;
  bool is_series = false;
  bool is_product = false;
  bool is_matrix = false;
  bool commutative = false;
  bool domain = false;
};

/// Coefficient ring S. Immutable; always handled through RingPtr.
class Ring {
 public:
  static RingPtr field(Field f);
  static RingPtr polynomial(Field f, std::size_t nvars);
  /// F[x,y]/(y^2 - g(x)); the default g is x^3 + x. Requires char != 2.
  static RingPtr curve(Field f);
  static RingPtr curve(Field f, Poly g);
  /// S0[[t]] truncated modulo t^order.
  static RingPtr series(RingPtr base, std::size_t order);
  static RingPtr product(RingPtr first, RingPtr second);
  static RingPtr findim(AlgebraPtr algebra);
  /// M_n(base).
  static RingPtr matrix(RingPtr base, std::size_t n);
  /// Descriptor only: no element arithmetic. Exists so that dispatch can
  /// report the class as out of scope.
  static RingPtr free_algebra(Field f, std::size_t nvars);

  RingFamily family() const { return family_; }
  Field base_field() const { return field_; }
  const RingCaps& caps() const { return caps_; }
  std::uint64_t characteristic() const { return field_.p; }

  std::size_t nvars() const { return nvars_; }
  const Poly& curve_g() const { return curve_g_; }
  std::size_t order() const { return order_; }
  std::size_t matrix_size() const { return n_; }
  const RingPtr& base() const { return base_; }
  const RingPtr& factor(std::size_t i) const { return i == 0 ? base_ : second_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  /// Dimension over F for the field and findim families.
  std::size_t dimension() const;

  std::string name() const;
  bool same_as(const Ring& other) const;

 private:
  Ring() = default;

  RingFamily family_ = RingFamily::field;
  Field field_{};
  RingCaps caps_{};
  std::size_t nvars_ = 0;
  Poly curve_g_{};
  std::size_t order_ = 0;
  std::size_t n_ = 0;
  RingPtr base_;
  RingPtr second_;
  AlgebraPtr algebra_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Element of a Ring. Values are immutable once built; the operators return
/// new elements.
class RingElement {
 public:
  struct CurveCoords {
    Poly a;
    Poly b;
    friend bool operator==(const CurveCoords&, const CurveCoords&) = default;
  };

  RingElement() = default;

  static RingElement zero(const RingPtr& ring);
  static RingElement one(const RingPtr& ring);
  /// The image of a field scalar under F -> S.
  static RingElement scalar(const RingPtr& ring, const FieldElement& c);
  static RingElement from_poly(const RingPtr& ring, Poly p);
  static RingElement curve(const RingPtr& ring, Poly a, Poly b);
  static RingElement series(const RingPtr& ring, std::vector<RingElement> coefficients);
  static RingElement product(const RingPtr& ring, RingElement first, RingElement second);
  static RingElement findim(const RingPtr& ring, std::vector<FieldElement> coords);
  static RingElement matrix(const RingPtr& ring, std::vector<RingElement> entries);

  const RingPtr& ring() const { return ring_; }
  const FieldElement& field_value() const;
  const Poly& poly() const;
  const CurveCoords& curve_coords() const;
  /// Series coefficients, product components or matrix entries (row-major).
  const std::vector<RingElement>& parts() const;
  /// Coordinates in a finite-dimensional algebra.
  const std::vector<FieldElement>& coords() const;

  bool is_zero() const;
  bool is_one() const;
  std::string to_string() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement operator-() const;
  RingElement& operator+=(const RingElement& rhs) { return *this = *this + rhs; }
  RingElement& operator-=(const RingElement& rhs) { return *this = *this - rhs; }
  RingElement& operator*=(const RingElement& rhs) { return *this = *this * rhs; }
  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  struct Parts {
    std::vector<RingElement> items;
    friend bool operator==(const Parts&, const Parts&) = default;
  };
  using Data = std::variant<FieldElement, Poly, CurveCoords, Parts, std::vector<FieldElement>>;

  RingElement(RingPtr ring, Data data) : ring_(std::move(ring)), data_(std::move(data)) {}

  RingPtr ring_;
  Data data_;
};

inline bool is_zero(const RingElement& x) { return x.is_zero(); }
inline RingElement one_like(const RingElement& x) { return RingElement::one(x.ring()); }
inline RingElement zero_like(const RingElement& x) { return RingElement::zero(x.ring()); }

/// c * u for c in F.
RingElement scale(const FieldElement& c, const RingElement& u);

/// lambda when u = lambda * 1 for a field scalar lambda.
std::optional<FieldElement> as_scalar(const RingElement& u);

bool ring_is_unit(const RingElement& u);
/// Two-sided inverse when u is a unit. Every returned inverse has been
/// multiplied back on both sides.
std::optional<RingElement> ring_inverse(const RingElement& u);
/// q with b * q = a, in rings where that is decidable (fields, polynomial
/// rings, the curve ring). nullopt when no quotient exists.
std::optional<RingElement> ring_divide(const RingElement& a, const RingElement& b);
/// Monic gcd; only for rings with has_gcd.
RingElement ring_gcd(const RingElement& a, const RingElement& b);

// Curve ring F[x,y]/(y^2 - g(x)).
RingElement curve_mul(const RingElement& u, const RingElement& v);
/// The norm a^2 - b^2 g, a polynomial in x.
Poly curve_norm(const RingElement& u);
bool curve_is_unit(const RingElement& u);
/// q with den * q = num, or nullopt; solves the 2x2 F[x]-system given by
/// multiplication by den on the (a, b) coordinates.
std::optional<RingElement> curve_divide(const RingElement& num, const RingElement& den);

// Truncated power series.
/// Inverse modulo t^N by order-by-order recursion. Throws NotInvertible when
/// the constant coefficient is not a unit of the base ring.
RingElement series_invert(const RingElement& u);
/// Reduction of a series element to a smaller truncation order.
RingElement series_truncate(const RingElement& u, const RingPtr& target);

/// Determinant of a square matrix over a commutative ring. Uses fraction-free
/// Bareiss elimination in domains and Berkowitz' division-free algorithm
/// otherwise.
RingElement ring_determinant(const Matrix<RingElement>& m);

struct BareissSolution {
  RingElement determinant;
  /// adj(m) * rhs, i.e. determinant * m^{-1} * rhs.
  std::vector<RingElement> adjugate_rhs;
};
/// Fraction-free Gauss-Jordan over a commutative domain with exact division.
/// A singular system gives determinant zero and an empty adjugate_rhs.
BareissSolution bareiss_solve(const Matrix<RingElement>& m, const std::vector<RingElement>& rhs);

}  // namespace snforge
