#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snforge/algebra.hpp"
#include "snforge/tensor.hpp"

namespace snforge {

/// Pairs (w_j, z_j) in R with sum_j w_j b_k z_j = (k == index ? 1 : 0) for
/// every basis element b_k.
struct DualSystem {
  AlgebraPtr r;
  std::size_t index = 0;
  std::vector<std::pair<Vec, Vec>> pairs;
};

/// Requires R central simple; throws DomainError otherwise.
DualSystem dual_system(const AlgebraPtr& r, std::size_t index);

/// A homomorphism R -> R (x) S given by the images of the basis of R.
/// Only validate_hom produces instances with validated == true.
struct HomSpec {
  AlgebraPtr r;
  RingPtr s;
  std::vector<TensorElement> images;
  bool validated = false;

  /// phi(x) for x in R.
  TensorElement apply(const Vec& x) const;
};

struct HomViolation {
  enum class Kind { not_central_simple, wrong_shape, unit, product };
  Kind kind = Kind::product;
  std::size_t i = 0;
  std::size_t j = 0;
  /// For product violations: phi(b_i) phi(b_j) and phi(b_i b_j). For unit
  /// violations: phi(1) and 1.
  std::optional<TensorElement> lhs;
  std::optional<TensorElement> rhs;
  std::string message;
};

struct HomValidation {
  std::optional<HomSpec> hom;
  std::optional<HomViolation> violation;
  bool ok() const { return hom.has_value(); }
};

/// Checks R central simple, the shape of the images, phi(1) = 1 and
/// phi(b_i) phi(b_j) = phi(b_i b_j) for all pairs in row-major order; the
/// first failure is reported.
HomValidation validate_hom(const AlgebraPtr& r, const RingPtr& s, std::vector<TensorElement> images);
/// validate_hom that throws DomainError carrying the violation message.
HomSpec require_hom(const AlgebraPtr& r, const RingPtr& s, std::vector<TensorElement> images);

/// c_k = sum_l b_l (x) s[k][l] with phi(x) = sum_k c_k x b_k.
struct CoefficientTuple {
  std::vector<TensorElement> c;
  std::vector<std::vector<RingElement>> s;
};

/// Solves phi(b_p) = sum_k c_k b_p b_k for the s[k][l] and checks
/// (a) the defining identity, (b) phi(x) c_k = c_k x, and (c) sum_k c_k b_k = 1.
/// Throws DomainError if a check fails, which means phi is not a homomorphism.
CoefficientTuple extract_coefficients(const HomSpec& phi);

/// b_kl = sum_j w_j phi(z_j) for the dual system of coordinate l. Checks
/// b_kl c_k = 1 (x) s[k][l].
TensorElement witness(const HomSpec& phi, const CoefficientTuple& ct, std::size_t k, std::size_t l);
/// Same, reusing a dual system for coordinate l.
TensorElement witness(const HomSpec& phi, const CoefficientTuple& ct, std::size_t k, const DualSystem& dual);

/// When S is F or finite-dimensional: scalars lambda[k*d+l] with
/// sum lambda s[k][l] = 1, or nullopt if 1 is not in their F-span.
std::optional<std::vector<FieldElement>> unit_in_coefficient_span(const CoefficientTuple& ct);

struct ConjugatorCheck {
  bool passed = false;
  std::optional<TensorElement> inverse;
  /// Basis index of the first failed conjugation check, when that was the failure.
  std::optional<std::size_t> failed_index;
  std::string reason;
  std::vector<std::string> transcript;
};

/// Inverts c and checks phi(b_k) c = c b_k for every k and c c^-1 = c^-1 c = 1.
ConjugatorCheck verify_conjugator(const HomSpec& phi, const TensorElement& c);

/// Images a b_k a^-1. Uses tensor_invert when a is a unit of R (x) S;
/// otherwise, for commutative domains, the adjugate of the regular
/// representation and exact division, so that a may be invertible only over
/// the fraction field as long as every image is integral. Throws DomainError
/// when an image leaves R (x) S.
std::vector<TensorElement> conjugation_images(const TensorElement& a);

}  // namespace snforge
