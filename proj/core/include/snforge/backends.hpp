#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "snforge/sn_core.hpp"

namespace snforge {

enum class Status { Inner, NotInner, Unsupported, Exhausted };
std::string status_name(Status s);

struct SolveRequest {
  HomSpec phi;
  std::uint64_t seed = 0;
  unsigned trials = 64;
  /// Backend name to force instead of the capability dispatch.
  std::optional<std::string> backend;
  /// Optional conjugation presentation: phi(x) = a x a^-1 with a invertible
  /// over the fraction field of S. Required by the curve certifier.
  std::optional<TensorElement> presentation;
};

/// One case of the curve-ring square analysis.
struct CurveBranch {
  std::string name;
  /// The polynomial identity the branch requires, in words.
  std::string equation;
  /// Polynomial that must be (a constant times) a square for the branch to
  /// survive; zero when the branch dies on a divisibility or degree test.
  Poly tested;
  bool refuted = true;
  std::string reason;
};

struct CurveAnalysis {
  /// det(a) = delta_a + delta_b y.
  RingElement delta;
  std::vector<CurveBranch> branches;
  /// delta = gamma f^2 when some branch survives.
  std::optional<RingElement> f;
  std::optional<FieldElement> gamma;
  /// Entry of a not divisible by f, when f exists but a / f is not integral.
  std::optional<std::size_t> nondivisible_entry;
};

/// Data behind the matrix-over-F[x] backend.
struct PidData {
  /// Conjugator over the fraction field, denominators cleared.
  TensorElement a;
  /// a^-1 = adj / delta with gcd(delta, adj) = 1.
  RingElement delta;
  TensorElement adj;
  /// Generators of M(a) found by the reduction map, then the Hermite basis.
  std::vector<std::vector<Poly>> generators;
  std::vector<std::vector<Poly>> c;  // n x n, rows a basis of M(a)
  std::vector<std::string> checks;
};

struct Certificate {
  Status status = Status::Unsupported;
  std::string backend;
  std::uint64_t seed = 0;
  unsigned trials = 64;
  unsigned trials_used = 0;
  std::optional<TensorElement> conjugator;
  std::optional<TensorElement> inverse;
  std::vector<std::string> transcript;
  std::string message;
  std::optional<CoefficientTuple> coefficients;
  std::optional<CurveAnalysis> curve;
  std::optional<PidData> pid;
  /// Product factors, or the base-ring certificate of a series solve.
  std::vector<Certificate> parts;
};

/// Name of the backend the dispatcher picks for S, or nullopt with reason.
std::optional<std::string> select_backend(const RingPtr& s, std::string* why = nullptr);

Certificate solve_findim(const SolveRequest& req);
Certificate solve_ufd(const SolveRequest& req);
Certificate solve_pid_module(const SolveRequest& req);
Certificate solve_power_series(const SolveRequest& req);
Certificate solve_product(const SolveRequest& req);
Certificate certify_not_inner_curve(const SolveRequest& req);
/// Picks a backend (priority product, series, finite-dimensional, matrix
/// over F[x], UFD, curve) or honors req.backend.
Certificate dispatch(const SolveRequest& req);

/// Search of the intertwiner space {c : phi_images[p] c = c x_images[p]} in
/// a finite-dimensional F-algebra for an invertible element, by seeded random
/// combinations of a kernel basis with coefficients in [-bound, bound].
struct IntertwinerSearch {
  std::optional<Vec> c;
  std::optional<Vec> c_inverse;
  std::size_t kernel_dimension = 0;
  unsigned trials_used = 0;
};
IntertwinerSearch find_invertible_intertwiner(const StructAlgebra& ambient, const std::vector<Vec>& phi_images,
                                              const std::vector<Vec>& x_images, std::uint64_t seed, unsigned trials,
                                              long bound);

/// Factorization a = u (1 (x) c) for a in R (x) M_n(F[x]) with integral
/// conjugates a x a^-1: computes M(a), its Hermite basis c, and u.
struct PidFactorization {
  PidData data;
  TensorElement u;
  TensorElement u_inverse;
};
PidFactorization factor_pid(const TensorElement& a);

/// Square analysis of det(a) for a in M_2(F[x,y]/(y^2 - g)).
CurveAnalysis analyze_curve_conjugator(const TensorElement& a);

/// Rejects an F_p ground field with p <= 2 * dim when random sampling needs
/// many points; returns the reason or nullopt when fine.
std::optional<std::string> field_size_guard(Field f, std::size_t dim);

/// Truncates every element of a series-backend certificate to the order of
/// target (a series ring of smaller order over the same base).
Certificate truncate_certificate(const Certificate& cert, const RingPtr& target);

}  // namespace snforge
