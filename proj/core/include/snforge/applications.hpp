#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snforge/backends.hpp"

namespace snforge {

// ---------------------------------------------------------------------------
// Automorphisms of M_n(S) = M_n(F) (x) S

/// Generators of S as an F-algebra: the variables of a polynomial ring, x and
/// y for the curve ring, the basis of a finite-dimensional algebra, nothing
/// for F itself. Throws Unsupported for the other families.
std::vector<RingElement> ring_generators(const RingPtr& s);

/// sigma(t) for the F-algebra map S -> S given by the images of
/// ring_generators(S).
RingElement substitute(const RingElement& t, const std::vector<RingElement>& images);
/// Nullopt when the generator images define an F-algebra endomorphism of S,
/// otherwise the first violated relation.
std::optional<std::string> substitution_defect(const RingPtr& s, const std::vector<RingElement>& images);
/// Images of the inverse endomorphism, when sigma is an affine change of
/// variables (polynomial rings) or an invertible linear map (finite-
/// dimensional S). Nullopt when sigma is not invertible or not of that kind.
std::optional<std::vector<RingElement>> invert_substitution(const RingPtr& s, const std::vector<RingElement>& images);

/// psi on generators: psi(e_ij (x) 1) row-major, then psi(1 (x) s_g).
struct AutData {
  std::vector<TensorElement> unit_images;
  std::vector<TensorElement> generator_images;
};

struct AutSpec {
  RingPtr s;
  std::size_t n = 0;
  AlgebraPtr r;  // M_n(F)
  AutData forward;
  std::optional<AutData> inverse;
  bool validated = false;
};

/// Checks that the data define a unital homomorphism (matrix units go to a
/// homomorphic image, generator images commute with them and satisfy the
/// relations of S), and when inverse data is present that both composites
/// are the identity on generators. Throws DomainError with the first failure.
AutSpec validate_automorphism(const RingPtr& s, std::size_t n, AutData forward, std::optional<AutData> inverse);

/// psi(T) for T in M_n(S), extended multiplicatively from the generators.
TensorElement apply_automorphism(const AlgebraPtr& r, const RingPtr& s, const AutData& psi, const TensorElement& t);

/// Inn(c0) o (id (x) sigma) with its inverse (id (x) sigma^-1) o Inn(c0^-1).
AutSpec twisted_inner_automorphism(const TensorElement& c0, const std::vector<RingElement>& sigma,
                                   const std::vector<RingElement>& sigma_inverse);
/// Same with sigma^-1 from invert_substitution.
AutSpec twisted_inner_automorphism(const TensorElement& c0, const std::vector<RingElement>& sigma);

struct AutDecomposition {
  Status status = Status::Unsupported;
  Certificate certificate;
  std::optional<TensorElement> c;
  std::optional<TensorElement> c_inverse;
  std::vector<RingElement> generators;
  /// sigma(s_g) for each generator.
  std::vector<RingElement> sigma;
  /// sigma'(s_g) from decomposing psi^-1.
  std::vector<RingElement> sigma_inverse;
  std::vector<std::string> transcript;
};

/// psi = Inn(c) o (id (x) sigma). Solves for c on M_n(F) (x) 1 through the
/// dispatcher, reads sigma off c^-1 psi(1 (x) s_g) c, decomposes psi^-1 the
/// same way and checks sigma o sigma' = sigma' o sigma = id and the
/// reassembly on every generator. When the spec carries no inverse data,
/// psi^-1 is built from invert_substitution. DomainError when psi is not of
/// this form.
AutDecomposition decompose_automorphism(const AutSpec& psi, std::uint64_t seed, unsigned trials = 64);

// ---------------------------------------------------------------------------
// Derivations R -> M

struct DerivationSpec {
  AlgebraPtr r;
  Bimodule m;
  /// d(b_k) in M.
  std::vector<Vec> values;
  bool validated = false;
};

/// Checks R central simple, the bimodule laws and the Leibniz rule on all
/// basis pairs. Throws DomainError with the first failure.
DerivationSpec validate_derivation(const Bimodule& m, std::vector<Vec> values);
/// The inner derivation x -> m x - x m.
DerivationSpec inner_derivation(const Bimodule& m, const Vec& element);

struct DerivationWitness {
  Status status = Status::Unsupported;
  /// w with d(x) = w x - x w, reduced modulo the R-centralizing part of M.
  Vec w;
  /// The unnormalized t^-1 v.
  Vec raw;
  FieldElement t;
  std::size_t ambient_dimension = 0;
  std::size_t kernel_dimension = 0;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  unsigned trials_used = 0;
  std::vector<std::string> transcript;
};

/// Conjugates the copy of R in [x u; 0 x] into the graph of d and reads the
/// witness off the conjugator.
DerivationWitness inner_derivation_witness(const DerivationSpec& d, std::uint64_t seed, unsigned trials = 64);

/// {z in M : x z = z x for all x in R}.
std::vector<Vec> bimodule_centralizer(const Bimodule& m);

// ---------------------------------------------------------------------------
// The flip x (x) 1 -> 1 (x) x

struct FlipResult {
  bool inner = false;
  /// Conjugator in R (x) R with c (x (x) 1) c^-1 = 1 (x) x.
  std::optional<Vec> c;
  std::optional<Vec> c_inverse;
  AlgebraPtr tensor_square;
  std::size_t center_dimension = 0;
  /// Nonzero proper two-sided ideal, reported when the center is F.
  std::optional<std::vector<Vec>> ideal_witness;
  std::string defect;
  /// Outcome of the intertwiner search itself; must agree with inner.
  bool search_found = false;
  std::size_t kernel_dimension = 0;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  std::vector<std::string> transcript;
};

FlipResult flip_innerness_check(const AlgebraPtr& r, std::uint64_t seed = 0, unsigned trials = 64);

}  // namespace snforge
