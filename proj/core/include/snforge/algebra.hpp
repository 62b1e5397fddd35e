#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "snforge/field.hpp"
#include "snforge/linalg.hpp"

namespace snforge {

class StructAlgebra;
using AlgebraPtr = std::shared_ptr<const StructAlgebra>;
using Vec = std::vector<FieldElement>;
using FMatrix = Matrix<FieldElement>;

/// Data derived from the spanning matrix of the operators x -> b_p x b_q.
/// The matrix is invertible exactly when the algebra is central simple.
struct CsaData {
  bool central_simple = false;
  std::size_t spanning_rank = 0;
  /// Inverse of the spanning matrix (only when central_simple). Column
  /// index p*d+q belongs to the operator x -> b_p x b_q; row index k*d+m is
  /// coordinate m of the image of b_k.
  FMatrix spanning_inverse;
};

/// Finite-dimensional associative unital F-algebra given by structure
/// constants b_i b_j = sum_k gamma(i,j,k) b_k. Associativity and the unit
/// laws are checked when the table comes from outside the library.
class StructAlgebra {
 public:
  struct Entry {
    std::size_t index;
    FieldElement value;
  };
  using Table = std::vector<std::vector<std::vector<FieldElement>>>;

  /// Dense table gamma[i][j][k]. Throws DomainError naming the first basis
  /// triple that violates associativity, or the first basis element that
  /// violates a unit law.
  static AlgebraPtr from_table(Field field, const Table& gamma, Vec unit, std::vector<std::string> labels = {});
  /// Sparse table, products[i*d+j]. verify=false is reserved for
  /// constructions whose laws follow from already verified inputs.
  static AlgebraPtr from_sparse(Field field, std::size_t dimension, std::vector<std::vector<Entry>> products,
                                Vec unit, std::vector<std::string> labels, bool verify = true);

  StructAlgebra(const StructAlgebra&) = delete;
  StructAlgebra& operator=(const StructAlgebra&) = delete;

  Field field() const { return field_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<Entry>& product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }
  FieldElement gamma(std::size_t i, std::size_t j, std::size_t k) const;
  Table dense_table() const;
  const Vec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vec zero_vector() const { return Vec(dim_, FieldElement::zero(field_)); }
  Vec basis_vector(std::size_t i) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  /// Matrix of x -> a x on coordinates.
  FMatrix left_matrix(const Vec& a) const;
  /// Matrix of x -> x a on coordinates.
  FMatrix right_matrix(const Vec& a) const;
  bool is_commutative() const;
  /// Structural equality of tables, units and labels.
  bool same_as(const StructAlgebra& other) const;

  /// Spanning-matrix data, computed once and shared.
  const CsaData& csa() const;

 private:
  StructAlgebra(Field field, std::size_t dim, std::vector<std::vector<Entry>> products, Vec unit,
                std::vector<std::string> labels);
  void verify() const;

  Field field_;
  std::size_t dim_;
  std::vector<std::vector<Entry>> products_;
  Vec unit_;
  std::vector<std::string> labels_;
  mutable std::once_flag csa_once_;
  mutable std::shared_ptr<const CsaData> csa_;
};

/// Element of a StructAlgebra.
struct AlgElement {
  AlgebraPtr algebra;
  Vec coords;

  static AlgElement basis(const AlgebraPtr& a, std::size_t i) { return {a, a->basis_vector(i)}; }
  static AlgElement one(const AlgebraPtr& a) { return {a, a->unit()}; }
  static AlgElement zero(const AlgebraPtr& a) { return {a, a->zero_vector()}; }

  bool is_zero() const;
  friend AlgElement operator*(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator+(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator-(const AlgElement& x, const AlgElement& y);
  friend AlgElement operator*(const FieldElement& c, const AlgElement& x);
  friend bool operator==(const AlgElement& x, const AlgElement& y) { return x.coords == y.coords; }
};

/// Linear subspace of F^n kept in reduced row echelon form.
class Subspace {
 public:
  Subspace(Field field, std::size_t ambient, const std::vector<Vec>& spanning);

  std::size_t dimension() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool contains(const Vec& v) const;
  /// v minus its component along the pivot coordinates of the basis.
  Vec reduce(const Vec& v) const;
  bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

// Constructors.
AlgebraPtr field_algebra(Field f);
/// M_n(F) with the matrix-unit basis e_11, e_12, ..., e_nn in row-major order.
AlgebraPtr matrix_algebra(Field f, std::size_t n);
/// (alpha, beta | F): basis 1, i, j, k with i^2 = alpha, j^2 = beta, ij = k = -ji.
AlgebraPtr quaternion_algebra(const FieldElement& alpha, const FieldElement& beta);
/// F x F x ... x F (k copies).
AlgebraPtr diagonal_algebra(Field f, std::size_t k);
/// F[t]/(t^k) with basis 1, t, ..., t^{k-1}.
AlgebraPtr truncated_polynomial_algebra(Field f, std::size_t k);
/// Upper triangular k x k matrices, basis e_ij (i <= j) in row-major order.
AlgebraPtr upper_triangular_algebra(Field f, std::size_t k);
AlgebraPtr direct_product(const AlgebraPtr& a, const AlgebraPtr& b);
/// Basis a_i (x) b_j at index i * dim(b) + j.
AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b);
/// Same algebra in the basis whose i-th vector is column i of change
/// (old coordinates). change must be invertible.
AlgebraPtr change_basis(const AlgebraPtr& a, const FMatrix& change);

struct Quotient {
  AlgebraPtr algebra;
  /// Row i gives the old coordinates of the new basis element i (a lift).
  std::vector<Vec> lifts;
  Subspace ideal;
  Vec project(const Vec& v) const;
};
/// A / I for a two-sided ideal I given by a spanning set.
Quotient quotient_algebra(const AlgebraPtr& a, const std::vector<Vec>& ideal);

/// Unital R-bimodule M of dimension m: x . v = left[i] v and v . x = right[i] v
/// for x = b_i.
struct Bimodule {
  AlgebraPtr algebra;
  std::size_t dimension = 0;
  std::vector<FMatrix> left;
  std::vector<FMatrix> right;

  Vec act_left(const Vec& x, const Vec& v) const;
  Vec act_right(const Vec& v, const Vec& x) const;
};
/// R as a bimodule over itself.
Bimodule regular_bimodule(const AlgebraPtr& r);
/// Throws DomainError when the actions are not unital, (anti)multiplicative,
/// or do not commute.
void verify_bimodule(const Bimodule& m);

/// The algebra of pairs (x, u), x in R, u in M, with
/// (x, u)(y, v) = (xy, x.v + u.y), i.e. matrices [x u; 0 x].
/// Basis: the basis of R followed by the basis of M.
AlgebraPtr triangular_extension(const Bimodule& m);

// Structure theory.
/// True iff the d^2 operators x -> b_p x b_q span End(A).
bool verify_central_simple(const StructAlgebra& a);
std::vector<Vec> center_basis(const StructAlgebra& a);
/// Basis of rad(A) as the kernel of (x, y) -> tr(L_{xy}); characteristic 0
/// only. The result is checked to be a nilpotent two-sided ideal.
std::vector<Vec> jacobson_radical(const StructAlgebra& a);
bool is_two_sided_ideal(const StructAlgebra& a, const std::vector<Vec>& basis);
bool is_nilpotent_subspace(const StructAlgebra& a, const std::vector<Vec>& basis);

}  // namespace snforge
