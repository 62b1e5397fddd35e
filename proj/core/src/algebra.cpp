#include "snforge/algebra.hpp"

#include <map>
#include <sstream>

#include "snforge/error.hpp"

namespace snforge {

namespace {

using Entry = StructAlgebra::Entry;

void add_entry(std::map<std::size_t, FieldElement>& acc, std::size_t k, const FieldElement& v) {
  auto [it, inserted] = acc.try_emplace(k, v);
  if (!inserted) it->second += v;
}

std::vector<Entry> to_entries(std::map<std::size_t, FieldElement>&& acc) {
  std::vector<Entry> out;
  for (auto& [k, v] : acc)
    if (!v.is_zero()) out.push_back({k, std::move(v)});
  return out;
}

std::vector<std::string> default_labels(std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("b" + std::to_string(i + 1));
  return labels;
}

std::string matrix_unit_label(std::size_t n, std::size_t i, std::size_t j) {
  if (n < 10) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
  return "e" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

StructAlgebra::StructAlgebra(Field field, std::size_t dim, std::vector<std::vector<Entry>> products, Vec unit,
                             std::vector<std::string> labels)
    : field_(field), dim_(dim), products_(std::move(products)), unit_(std::move(unit)), labels_(std::move(labels)) {
  if (dim_ == 0) throw DomainError("algebra of dimension zero");
  if (products_.size() != dim_ * dim_) throw DomainError("structure table has the wrong size");
  if (unit_.size() != dim_) throw DomainError("unit vector has the wrong length");
  if (labels_.empty()) labels_ = default_labels(dim_);
  if (labels_.size() != dim_) throw DomainError("basis label count does not match the dimension");
  for (auto& row : products_)
    for (const auto& e : row) {
      if (e.index >= dim_) throw DomainError("structure constant index out of range");
      if (e.value.field() != field_) throw DomainError("structure constant over the wrong field");
    }
}

AlgebraPtr StructAlgebra::from_table(Field field, const Table& gamma, Vec unit, std::vector<std::string> labels) {
  const std::size_t d = gamma.size();
  std::vector<std::vector<Entry>> products(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (gamma[i].size() != d) throw DomainError("structure table is not d x d x d");
    for (std::size_t j = 0; j < d; ++j) {
      if (gamma[i][j].size() != d) throw DomainError("structure table is not d x d x d");
      for (std::size_t k = 0; k < d; ++k)
        if (!gamma[i][j][k].is_zero()) products[i * d + j].push_back({k, gamma[i][j][k]});
    }
  }
  return from_sparse(field, d, std::move(products), std::move(unit), std::move(labels), true);
}

AlgebraPtr StructAlgebra::from_sparse(Field field, std::size_t dimension, std::vector<std::vector<Entry>> products,
                                      Vec unit, std::vector<std::string> labels, bool verify) {
  std::shared_ptr<StructAlgebra> a(
      new StructAlgebra(field, dimension, std::move(products), std::move(unit), std::move(labels)));
  if (verify) a->verify();
  return a;
}

void StructAlgebra::verify() const {
  const std::size_t d = dim_;
  for (std::size_t i = 0; i < d; ++i) {
    const Vec bi = basis_vector(i);
    if (multiply(unit_, bi) != bi || multiply(bi, unit_) != bi)
      throw DomainError("unit law fails for basis element " + labels_[i]);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec bibj = multiply(basis_vector(i), basis_vector(j));
      for (std::size_t k = 0; k < d; ++k) {
        const Vec lhs = multiply(bibj, basis_vector(k));
        const Vec rhs = multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
        if (lhs != rhs)
          throw DomainError("associativity fails for basis triple (" + labels_[i] + ", " + labels_[j] + ", " +
                            labels_[k] + ")");
      }
    }
}

FieldElement StructAlgebra::gamma(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& e : product(i, j))
    if (e.index == k) return e.value;
  return FieldElement::zero(field_);
}

StructAlgebra::Table StructAlgebra::dense_table() const {
  Table t(dim_, std::vector<Vec>(dim_, zero_vector()));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& e : product(i, j)) t[i][j][e.index] = e.value;
  return t;
}

Vec StructAlgebra::basis_vector(std::size_t i) const {
  Vec v = zero_vector();
  v.at(i) = FieldElement::one(field_);
  return v;
}

Vec StructAlgebra::multiply(const Vec& a, const Vec& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw DomainError("algebra element has the wrong length");
  Vec out = zero_vector();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j].is_zero()) continue;
      const auto& entries = product(i, j);
      if (entries.empty()) continue;
      const FieldElement c = a[i] * b[j];
      for (const auto& e : entries) out[e.index] += c * e.value;
    }
  }
  return out;
}

FMatrix StructAlgebra::left_matrix(const Vec& a) const {
  FMatrix m(dim_, dim_, FieldElement::zero(field_));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& e : product(i, j)) m(e.index, j) += a[i] * e.value;
  }
  return m;
}

FMatrix StructAlgebra::right_matrix(const Vec& a) const {
  FMatrix m(dim_, dim_, FieldElement::zero(field_));
  for (std::size_t j = 0; j < dim_; ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      for (const auto& e : product(i, j)) m(e.index, i) += a[j] * e.value;
  }
  return m;
}

bool StructAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const auto& a = product(i, j);
      const auto& b = product(j, i);
      if (a.size() != b.size()) return false;
      for (std::size_t t = 0; t < a.size(); ++t)
        if (a[t].index != b[t].index || a[t].value != b[t].value) return false;
    }
  return true;
}

bool StructAlgebra::same_as(const StructAlgebra& other) const {
  if (this == &other) return true;
  if (field_ != other.field_ || dim_ != other.dim_ || unit_ != other.unit_ || labels_ != other.labels_) return false;
  for (std::size_t t = 0; t < products_.size(); ++t) {
    const auto& a = products_[t];
    const auto& b = other.products_[t];
    if (a.size() != b.size()) return false;
    for (std::size_t s = 0; s < a.size(); ++s)
      if (a[s].index != b[s].index || a[s].value != b[s].value) return false;
  }
  return true;
}

const CsaData& StructAlgebra::csa() const {
  std::call_once(csa_once_, [this] {
    const std::size_t d = dim_;
    const std::size_t n = d * d;
    const FieldElement zero = FieldElement::zero(field_);
    FMatrix span(n, n, zero);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t k = 0; k < d; ++k) {
        const Vec bpbk = multiply(basis_vector(p), basis_vector(k));
        for (std::size_t q = 0; q < d; ++q) {
          const Vec img = multiply(bpbk, basis_vector(q));
          for (std::size_t m = 0; m < d; ++m) span(k * d + m, p * d + q) = img[m];
        }
      }
    auto data = std::make_shared<CsaData>();
    data->spanning_rank = rank(span);
    data->central_simple = data->spanning_rank == n;
    if (data->central_simple) data->spanning_inverse = *inverse(span, zero);
    csa_ = std::move(data);
  });
  return *csa_;
}

bool AlgElement::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

AlgElement operator*(const AlgElement& x, const AlgElement& y) { return {x.algebra, x.algebra->multiply(x.coords, y.coords)}; }

AlgElement operator+(const AlgElement& x, const AlgElement& y) {
  AlgElement r = x;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += y.coords.at(i);
  return r;
}

AlgElement operator-(const AlgElement& x, const AlgElement& y) {
  AlgElement r = x;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= y.coords.at(i);
  return r;
}

AlgElement operator*(const FieldElement& c, const AlgElement& x) {
  AlgElement r = x;
  for (auto& v : r.coords) v *= c;
  return r;
}

// Subspace

Subspace::Subspace(Field field, std::size_t ambient, const std::vector<Vec>& spanning)
    : field_(field), ambient_(ambient) {
  if (spanning.empty()) return;
  FMatrix m(spanning.size(), ambient, FieldElement::zero(field));
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    if (spanning[i].size() != ambient) throw DomainError("subspace vector has the wrong length");
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = spanning[i][j];
  }
  const auto r = rref(std::move(m));
  pivots_ = r.pivots;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Vec row(ambient, FieldElement::zero(field));
    for (std::size_t j = 0; j < ambient; ++j) row[j] = r.reduced(i, j);
    basis_.push_back(std::move(row));
  }
}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const FieldElement c = r[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_[i][j].is_zero()) r[j] -= c * basis_[i][j];
  }
  return r;
}

bool Subspace::contains(const Vec& v) const {
  for (const auto& c : reduce(v))
    if (!c.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

bool operator==(const Subspace& a, const Subspace& b) { return a.ambient_ == b.ambient_ && a.basis_ == b.basis_; }

// Constructors

AlgebraPtr field_algebra(Field f) {
  std::vector<std::vector<Entry>> products{{{0, FieldElement::one(f)}}};
  return StructAlgebra::from_sparse(f, 1, std::move(products), {FieldElement::one(f)}, {"1"}, false);
}

AlgebraPtr matrix_algebra(Field f, std::size_t n) {
  if (n == 0) throw DomainError("matrix algebra of size zero");
  const std::size_t d = n * n;
  std::vector<std::vector<Entry>> products(d * d);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back(matrix_unit_label(n, i, j));
      for (std::size_t l = 0; l < n; ++l) products[(i * n + j) * d + (j * n + l)].push_back({i * n + l, FieldElement::one(f)});
    }
  Vec unit(d, FieldElement::zero(f));
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = FieldElement::one(f);
  return StructAlgebra::from_sparse(f, d, std::move(products), std::move(unit), std::move(labels), false);
}

AlgebraPtr quaternion_algebra(const FieldElement& alpha, const FieldElement& beta) {
  const Field f = alpha.field();
  if (beta.field() != f) throw DomainError("quaternion parameters over different fields");
  if (f.p == 2) throw DomainError("quaternion algebras need characteristic other than 2");
  if (alpha.is_zero() || beta.is_zero()) throw DomainError("quaternion parameters must be nonzero");
  const FieldElement one = FieldElement::one(f);
  const FieldElement ab = alpha * beta;
  // basis 1, i, j, k; row-major table of b_x b_y
  std::vector<std::vector<Entry>> p(16);
  auto set = [&](std::size_t x, std::size_t y, std::size_t k, FieldElement v) { p[x * 4 + y].push_back({k, std::move(v)}); };
  for (std::size_t x = 0; x < 4; ++x) {
    set(0, x, x, one);
    if (x != 0) set(x, 0, x, one);
  }
  set(1, 1, 0, alpha);
  set(2, 2, 0, beta);
  set(3, 3, 0, -ab);
  set(1, 2, 3, one);
  set(2, 1, 3, -one);
  set(1, 3, 2, alpha);   // i k = i i j = alpha j
  set(3, 1, 2, -alpha);  // k i = -alpha j
  set(3, 2, 1, beta);    // k j = i j j = beta i
  set(2, 3, 1, -beta);
  Vec unit{one, FieldElement::zero(f), FieldElement::zero(f), FieldElement::zero(f)};
  return StructAlgebra::from_sparse(f, 4, std::move(p), std::move(unit), {"1", "i", "j", "k"}, true);
}

AlgebraPtr diagonal_algebra(Field f, std::size_t k) {
  if (k == 0) throw DomainError("diagonal algebra of size zero");
  std::vector<std::vector<Entry>> p(k * k);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) {
    p[i * k + i].push_back({i, FieldElement::one(f)});
    labels.push_back("d" + std::to_string(i + 1));
  }
  return StructAlgebra::from_sparse(f, k, std::move(p), Vec(k, FieldElement::one(f)), std::move(labels), false);
}

AlgebraPtr truncated_polynomial_algebra(Field f, std::size_t k) {
  if (k == 0) throw DomainError("truncated polynomial algebra of length zero");
  std::vector<std::vector<Entry>> p(k * k);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
    for (std::size_t j = 0; i + j < k; ++j) p[i * k + j].push_back({i + j, FieldElement::one(f)});
  }
  Vec unit(k, FieldElement::zero(f));
  unit[0] = FieldElement::one(f);
  return StructAlgebra::from_sparse(f, k, std::move(p), std::move(unit), std::move(labels), false);
}

AlgebraPtr upper_triangular_algebra(Field f, std::size_t k) {
  if (k == 0) throw DomainError("triangular algebra of size zero");
  std::vector<std::pair<std::size_t, std::size_t>> units;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      index[{i, j}] = units.size();
      units.push_back({i, j});
      labels.push_back(matrix_unit_label(k, i, j));
    }
  const std::size_t d = units.size();
  std::vector<std::vector<Entry>> p(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (units[a].second == units[b].first)
        p[a * d + b].push_back({index[{units[a].first, units[b].second}], FieldElement::one(f)});
  Vec unit(d, FieldElement::zero(f));
  for (std::size_t i = 0; i < k; ++i) unit[index[{i, i}]] = FieldElement::one(f);
  return StructAlgebra::from_sparse(f, d, std::move(p), std::move(unit), std::move(labels), false);
}

AlgebraPtr direct_product(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->field() != b->field()) throw DomainError("direct product of algebras over different fields");
  const std::size_t da = a->dimension(), db = b->dimension(), d = da + db;
  std::vector<std::vector<Entry>> p(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) p[i * d + j] = a->product(i, j);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (const auto& e : b->product(i, j)) p[(da + i) * d + (da + j)].push_back({da + e.index, e.value});
  Vec unit = a->unit();
  unit.insert(unit.end(), b->unit().begin(), b->unit().end());
  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : b->labels()) labels.push_back("(0," + l + ")");
  return StructAlgebra::from_sparse(a->field(), d, std::move(p), std::move(unit), std::move(labels), false);
}

AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->field() != b->field()) throw DomainError("tensor product of algebras over different fields");
  const std::size_t da = a->dimension(), db = b->dimension(), d = da * db;
  std::vector<std::vector<Entry>> p(d * d);
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < da; ++j1) {
      const auto& ea = a->product(i1, j1);
      if (ea.empty()) continue;
      for (std::size_t i2 = 0; i2 < db; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          const auto& eb = b->product(i2, j2);
          if (eb.empty()) continue;
          std::map<std::size_t, FieldElement> acc;
          for (const auto& x : ea)
            for (const auto& y : eb) add_entry(acc, x.index * db + y.index, x.value * y.value);
          p[(i1 * db + i2) * d + (j1 * db + j2)] = to_entries(std::move(acc));
        }
    }
  Vec unit(d, FieldElement::zero(a->field()));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) unit[i * db + j] = a->unit()[i] * b->unit()[j];
  std::vector<std::string> labels;
  for (const auto& la : a->labels())
    for (const auto& lb : b->labels()) labels.push_back(la + "|" + lb);
  return StructAlgebra::from_sparse(a->field(), d, std::move(p), std::move(unit), std::move(labels), false);
}

AlgebraPtr change_basis(const AlgebraPtr& a, const FMatrix& change) {
  const std::size_t d = a->dimension();
  const FieldElement zero = FieldElement::zero(a->field());
  if (change.rows() != d || change.cols() != d) throw DomainError("change of basis has the wrong size");
  const auto inv = inverse(change, zero);
  if (!inv) throw DomainError("change of basis is singular");
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < d; ++i) cols.push_back(change.column(i));
  std::vector<std::vector<Entry>> p(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec prod = inv->apply(a->multiply(cols[i], cols[j]));
      for (std::size_t k = 0; k < d; ++k)
        if (!prod[k].is_zero()) p[i * d + j].push_back({k, prod[k]});
    }
  Vec unit = inv->apply(a->unit());
  return StructAlgebra::from_sparse(a->field(), d, std::move(p), std::move(unit), default_labels(d), false);
}

Vec Quotient::project(const Vec& v) const {
  const Vec r = ideal.reduce(v);
  std::vector<bool> is_pivot(r.size(), false);
  for (std::size_t c : ideal.pivots()) is_pivot[c] = true;
  Vec out;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (!is_pivot[j]) out.push_back(r[j]);
  return out;
}

Quotient quotient_algebra(const AlgebraPtr& a, const std::vector<Vec>& ideal) {
  if (!is_two_sided_ideal(*a, ideal)) throw DomainError("quotient by a subspace that is not a two-sided ideal");
  const std::size_t d = a->dimension();
  Subspace sub(a->field(), d, ideal);
  if (sub.dimension() == d) throw DomainError("quotient by the whole algebra");
  std::vector<bool> is_pivot(d, false);
  for (std::size_t c : sub.pivots()) is_pivot[c] = true;
  std::vector<Vec> lifts;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < d; ++j)
    if (!is_pivot[j]) {
      lifts.push_back(a->basis_vector(j));
      labels.push_back("[" + a->labels()[j] + "]");
    }
  Quotient q{nullptr, lifts, sub};
  const std::size_t dq = lifts.size();
  std::vector<std::vector<Entry>> p(dq * dq);
  for (std::size_t i = 0; i < dq; ++i)
    for (std::size_t j = 0; j < dq; ++j) {
      const Vec prod = q.project(a->multiply(lifts[i], lifts[j]));
      for (std::size_t k = 0; k < dq; ++k)
        if (!prod[k].is_zero()) p[i * dq + j].push_back({k, prod[k]});
    }
  q.algebra = StructAlgebra::from_sparse(a->field(), dq, std::move(p), q.project(a->unit()), std::move(labels), false);
  return q;
}

// Bimodules

Vec Bimodule::act_left(const Vec& x, const Vec& v) const {
  Vec out(dimension, FieldElement::zero(algebra->field()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) {
      const Vec part = left[i].apply(v);
      for (std::size_t j = 0; j < dimension; ++j) out[j] += x[i] * part[j];
    }
  return out;
}

Vec Bimodule::act_right(const Vec& v, const Vec& x) const {
  Vec out(dimension, FieldElement::zero(algebra->field()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) {
      const Vec part = right[i].apply(v);
      for (std::size_t j = 0; j < dimension; ++j) out[j] += x[i] * part[j];
    }
  return out;
}

Bimodule regular_bimodule(const AlgebraPtr& r) {
  Bimodule m{r, r->dimension(), {}, {}};
  for (std::size_t i = 0; i < r->dimension(); ++i) {
    m.left.push_back(r->left_matrix(r->basis_vector(i)));
    m.right.push_back(r->right_matrix(r->basis_vector(i)));
  }
  return m;
}

void verify_bimodule(const Bimodule& m) {
  const auto& r = *m.algebra;
  const std::size_t d = r.dimension();
  const FieldElement zero = FieldElement::zero(r.field());
  if (m.left.size() != d || m.right.size() != d) throw DomainError("bimodule needs one matrix per basis element");
  for (std::size_t i = 0; i < d; ++i)
    if (m.left[i].rows() != m.dimension || m.left[i].cols() != m.dimension || m.right[i].rows() != m.dimension ||
        m.right[i].cols() != m.dimension)
      throw DomainError("bimodule action matrix has the wrong size");
  auto combo = [&](const std::vector<FMatrix>& mats, const Vec& x) {
    FMatrix out(m.dimension, m.dimension, zero);
    for (std::size_t i = 0; i < d; ++i)
      if (!x[i].is_zero())
        for (std::size_t a = 0; a < m.dimension; ++a)
          for (std::size_t b = 0; b < m.dimension; ++b) out(a, b) += x[i] * mats[i](a, b);
    return out;
  };
  const FMatrix id = FMatrix::identity(m.dimension, zero);
  if (combo(m.left, r.unit()) != id || combo(m.right, r.unit()) != id)
    throw DomainError("bimodule action is not unital");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec bij = r.multiply(r.basis_vector(i), r.basis_vector(j));
      if (combo(m.left, bij) != m.left[i] * m.left[j]) throw DomainError("left action is not multiplicative");
      if (combo(m.right, bij) != m.right[j] * m.right[i]) throw DomainError("right action is not multiplicative");
      if (m.left[i] * m.right[j] != m.right[j] * m.left[i]) throw DomainError("left and right actions do not commute");
    }
}

AlgebraPtr triangular_extension(const Bimodule& m) {
  const auto& r = *m.algebra;
  const std::size_t d = r.dimension(), n = d + m.dimension;
  std::vector<std::vector<Entry>> p(n * n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) p[i * n + j] = r.product(i, j);
    for (std::size_t j = 0; j < m.dimension; ++j) {
      // b_i . v_j and v_j . b_i
      for (std::size_t k = 0; k < m.dimension; ++k) {
        if (!m.left[i](k, j).is_zero()) p[i * n + d + j].push_back({d + k, m.left[i](k, j)});
        if (!m.right[i](k, j).is_zero()) p[(d + j) * n + i].push_back({d + k, m.right[i](k, j)});
      }
    }
  }
  Vec unit = r.unit();
  unit.resize(n, FieldElement::zero(r.field()));
  std::vector<std::string> labels = r.labels();
  for (std::size_t j = 0; j < m.dimension; ++j) labels.push_back("m" + std::to_string(j + 1));
  return StructAlgebra::from_sparse(r.field(), n, std::move(p), std::move(unit), std::move(labels), false);
}

// Structure theory

bool verify_central_simple(const StructAlgebra& a) { return a.csa().central_simple; }

std::vector<Vec> center_basis(const StructAlgebra& a) {
  const std::size_t d = a.dimension();
  const FieldElement zero = FieldElement::zero(a.field());
  // z commutes with every b_j: sum_i z_i (gamma(i,j,k) - gamma(j,i,k)) = 0
  FMatrix m(d * d, d, zero);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      for (const auto& e : a.product(i, j)) m(j * d + e.index, i) += e.value;
      for (const auto& e : a.product(j, i)) m(j * d + e.index, i) -= e.value;
    }
  return kernel(m, zero);
}

bool is_two_sided_ideal(const StructAlgebra& a, const std::vector<Vec>& basis) {
  Subspace sub(a.field(), a.dimension(), basis);
  for (const auto& v : sub.basis())
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      const Vec bi = a.basis_vector(i);
      if (!sub.contains(a.multiply(bi, v)) || !sub.contains(a.multiply(v, bi))) return false;
    }
  return true;
}

bool is_nilpotent_subspace(const StructAlgebra& a, const std::vector<Vec>& basis) {
  Subspace j(a.field(), a.dimension(), basis);
  std::vector<Vec> power = j.basis();
  for (std::size_t step = 0; step <= a.dimension(); ++step) {
    if (power.empty()) return true;
    std::vector<Vec> next;
    for (const auto& x : power)
      for (const auto& y : j.basis()) next.push_back(a.multiply(x, y));
    power = Subspace(a.field(), a.dimension(), next).basis();
  }
  return power.empty();
}

std::vector<Vec> jacobson_radical(const StructAlgebra& a) {
  if (a.field().p != 0)
    throw Unsupported("radical computation via the trace form needs characteristic zero, got " + a.field().name());
  const std::size_t d = a.dimension();
  const FieldElement zero = FieldElement::zero(a.field());
  // tau_k = trace of left multiplication by b_k
  Vec tau(d, zero);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t m = 0; m < d; ++m) tau[k] += a.gamma(k, m, m);
  FMatrix gram(d, d, zero);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& e : a.product(i, j)) gram(i, j) += e.value * tau[e.index];
  auto rad = kernel(gram, zero);
  if (!is_two_sided_ideal(a, rad) || !is_nilpotent_subspace(a, rad))
    throw InternalError("trace-form kernel is not a nilpotent ideal");
  return rad;
}

}  // namespace snforge
