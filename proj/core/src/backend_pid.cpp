#include <random>

#include "backend_util.hpp"
#include "snforge/error.hpp"
#include "snforge/ratfunc.hpp"

namespace snforge {

namespace {

using PolyRow = std::vector<Poly>;

// R (x) M_n(A) as (R (x) M_n(F)) (x) A: basis b_l (x) e_ij at l*n^2 + i*n + j.
struct Flat {
  AlgebraPtr r;
  RingPtr s;  // M_n(A)
  RingPtr a;  // A = F[x]
  std::size_t n;
  AlgebraPtr rm;

  Flat(AlgebraPtr r_, RingPtr s_) : r(std::move(r_)), s(std::move(s_)), a(s->base()), n(s->matrix_size()) {
    rm = tensor_product(r, matrix_algebra(s->base_field(), n));
  }

  TensorElement to_flat(const TensorElement& u) const {
    std::vector<RingElement> c;
    for (const auto& x : u.coords())
      for (const auto& e : x.parts()) c.push_back(e);
    return TensorElement(rm, a, std::move(c));
  }

  TensorElement from_flat(const TensorElement& v) const {
    const std::size_t n2 = n * n;
    std::vector<RingElement> c;
    for (std::size_t l = 0; l < r->dimension(); ++l)
      c.push_back(RingElement::matrix(
          s, std::vector<RingElement>(v.coords().begin() + static_cast<long>(l * n2),
                                      v.coords().begin() + static_cast<long>((l + 1) * n2))));
    return TensorElement(r, s, std::move(c));
  }

  // 1 (x) m for an n x n matrix m over A (row-major).
  TensorElement one_tensor(const std::vector<RingElement>& m) const {
    const std::size_t n2 = n * n;
    std::vector<RingElement> c(r->dimension() * n2, RingElement::zero(a));
    for (std::size_t l = 0; l < r->dimension(); ++l) {
      if (r->unit()[l].is_zero()) continue;
      for (std::size_t t = 0; t < n2; ++t) c[l * n2 + t] = scale(r->unit()[l], m[t]);
    }
    return TensorElement(rm, a, std::move(c));
  }
};

Poly rem(const Poly& p, const Poly& m) { return divmod(p, m).second; }

Poly lcm(const Poly& a, const Poly& b) { return *divide_exact(a * b, gcd(a, b)); }

// Hermite normal form over F[x] of the row module generated by rows; returns
// the nonzero rows (upper triangular, monic pivots, reduced above pivots).
std::vector<PolyRow> hermite(std::vector<PolyRow> rows, std::size_t ncols) {
  std::size_t prow = 0;
  for (std::size_t col = 0; col < ncols && prow < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = prow; i < rows.size(); ++i)
        if (!rows[i][col].is_zero() && (best == rows.size() || rows[i][col].degree() < rows[best][col].degree()))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[prow], rows[best]);
      bool clean = true;
      for (std::size_t i = prow + 1; i < rows.size(); ++i) {
        if (rows[i][col].is_zero()) continue;
        const Poly q = divmod(rows[i][col], rows[prow][col]).first;
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[prow][j];
        if (!rows[i][col].is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (rows[prow][col].is_zero()) continue;
    const FieldElement lc = rows[prow][col].leading_coefficient().inverse();
    for (auto& e : rows[prow]) e = e.scaled(lc);
    for (std::size_t i = 0; i < prow; ++i) {
      const Poly q = divmod(rows[i][col], rows[prow][col]).first;
      if (q.is_zero()) continue;
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[prow][j];
    }
    ++prow;
  }
  rows.resize(prow);
  return rows;
}

struct MatAdj {
  RingElement det;
  std::vector<RingElement> adj;  // row-major n x n
};

MatAdj adjugate(const std::vector<PolyRow>& c, const RingPtr& a) {
  const std::size_t n = c.size();
  Matrix<RingElement> m(n, n, RingElement::zero(a));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = RingElement::from_poly(a, c[i][j]);
  MatAdj out{RingElement::zero(a), std::vector<RingElement>(n * n, RingElement::zero(a))};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<RingElement> e(n, RingElement::zero(a));
    e[j] = RingElement::one(a);
    const BareissSolution sol = bareiss_solve(m, e);
    if (sol.determinant.is_zero()) throw DomainError("module basis matrix is singular");
    out.det = sol.determinant;
    for (std::size_t i = 0; i < n; ++i) out.adj[i * n + j] = sol.adjugate_rhs[i];
  }
  return out;
}

// True when row * adj(c) is divisible by det(c), i.e. row lies in the A-row span of c.
bool in_row_span(const PolyRow& row, const MatAdj& c) {
  const std::size_t n = row.size();
  const Poly& det = c.det.poly();
  for (std::size_t j = 0; j < n; ++j) {
    Poly acc(det.field(), 1);
    for (std::size_t i = 0; i < n; ++i) acc += row[i] * c.adj[i * n + j].poly();
    if (!rem(acc, det).is_zero()) return false;
  }
  return true;
}

}  // namespace

PidFactorization factor_pid(const TensorElement& a_in) {
  const RingPtr& s = a_in.s();
  if (s->family() != RingFamily::matrix || s->base()->family() != RingFamily::polynomial || s->base()->nvars() != 1)
    throw DomainError("factor_pid needs S = M_n(F[x])");
  const Flat flat(a_in.r(), s);
  const std::size_t n = flat.n, n2 = n * n;
  const Field f = s->base_field();
  const RingPtr& ar = flat.a;

  PidFactorization out{};
  PidData& data = out.data;
  const TensorElement a = flat.to_flat(a_in);

  // a^-1 = b / delta with the content removed
  BareissSolution sol = bareiss_solve(regular_representation(a), TensorElement::one(flat.rm, ar).coords());
  if (sol.determinant.is_zero()) throw DomainError("a is not invertible over the fraction field");
  Poly g = sol.determinant.poly();
  for (const auto& x : sol.adjugate_rhs) g = gcd(g, x.poly());
  Poly delta = *divide_exact(sol.determinant.poly(), g);
  const FieldElement lc = delta.leading_coefficient().inverse();
  delta = delta.scaled(lc);
  std::vector<RingElement> bc;
  for (const auto& x : sol.adjugate_rhs) bc.push_back(RingElement::from_poly(ar, divide_exact(x.poly(), g)->scaled(lc)));
  const TensorElement b(flat.rm, ar, std::move(bc));
  if (a * b != TensorElement::from_s(flat.rm, RingElement::from_poly(ar, delta)))
    throw InternalError("adjugate identity a b = delta fails");
  data.a = a_in;
  data.delta = RingElement::from_poly(ar, delta);
  data.adj = flat.from_flat(b);

  // y_j = (1 (x) e_1j) b; r is in M(a) iff sum_j r_j y_j = 0 mod delta
  std::vector<TensorElement> y;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<RingElement> m(n2, RingElement::zero(ar));
    m[j] = RingElement::one(ar);
    y.push_back(flat.one_tensor(m) * b);
  }
  auto in_module = [&](const PolyRow& r) {
    for (std::size_t i = 0; i < flat.rm->dimension(); ++i) {
      Poly acc(f, 1);
      for (std::size_t j = 0; j < n; ++j) acc += r[j] * y[j].coord(i).poly();
      if (!rem(acc, delta).is_zero()) return false;
    }
    return true;
  };

  std::vector<PolyRow> gens;
  const auto e = static_cast<std::size_t>(delta.degree());
  if (e > 0) {
    const std::size_t dim = flat.rm->dimension();
    const FieldElement zero = FieldElement::zero(f);
    FMatrix sys(dim * e, n * e, zero);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < e; ++t) {
        const Poly xt = Poly::variable(f, 1, 0, static_cast<unsigned>(t));
        for (std::size_t i = 0; i < dim; ++i) {
          const Poly r = rem(xt * y[j].coord(i).poly(), delta);
          for (std::size_t pw = 0; pw < e; ++pw) sys(i * e + pw, j * e + t) = r.coefficient(static_cast<unsigned>(pw));
        }
      }
    for (const auto& v : kernel(sys, zero)) {
      PolyRow row;
      for (std::size_t j = 0; j < n; ++j) {
        Poly p(f, 1);
        for (std::size_t t = 0; t < e; ++t)
          if (!v[j * e + t].is_zero())
            p += Poly::monomial(f, 1, {static_cast<unsigned>(t)}, v[j * e + t]);
        row.push_back(std::move(p));
      }
      gens.push_back(std::move(row));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    PolyRow row(n, Poly(f, 1));
    row[j] = delta;
    gens.push_back(std::move(row));
  }
  data.generators = gens;
  data.c = hermite(gens, n);
  if (data.c.size() != n)
    throw DomainError("M(a) has rank " + std::to_string(data.c.size()) + " < " + std::to_string(n));

  // u = a (1 (x) c)^-1 = a (1 (x) adj c) / det c
  const MatAdj cadj = adjugate(data.c, ar);
  const TensorElement num = a * flat.one_tensor(cadj.adj);
  std::vector<RingElement> uc;
  for (const auto& x : num.coords()) {
    auto q = ring_divide(x, cadj.det);
    if (!q) throw InternalError("a (1 (x) c)^-1 is not integral");
    uc.push_back(std::move(*q));
  }
  const TensorElement u(flat.rm, ar, std::move(uc));
  auto uinv = tensor_invert(u);
  if (!uinv) throw InternalError("u = a (1 (x) c)^-1 is not invertible");

  // Cross-checks of the three characterizations.
  std::vector<RingElement> cm;
  for (const auto& row : data.c)
    for (const auto& x : row) cm.push_back(RingElement::from_poly(ar, x));
  if (u * flat.one_tensor(cm) != a) throw InternalError("a != u (1 (x) c)");
  data.checks.push_back("factorization a = u (1 (x) c) with u invertible: ok");
  for (const auto& row : data.c)
    if (!in_module(row)) throw InternalError("a row of c is not in M(a)");
  for (const auto& gen : data.generators)
    if (!in_row_span(gen, cadj)) throw InternalError("a generator of M(a) is not in the row span of c");
  data.checks.push_back("rows of c lie in M(a) and span all " + std::to_string(data.generators.size()) +
                        " generators: ok");
  for (std::size_t l = 0; l < a_in.r()->dimension(); ++l)
    for (std::size_t i = 0; i < n; ++i) {
      PolyRow row;
      for (std::size_t j = 0; j < n; ++j) row.push_back(a.coord(l * n2 + i * n + j).poly());
      if (!in_row_span(row, cadj)) throw InternalError("coefficient matrix of a is not in M_n(A) c");
    }
  for (std::size_t j = 0; j < n; ++j) {
    PolyRow row(n, Poly(f, 1));
    row[j] = delta;
    if (!in_row_span(row, cadj)) throw InternalError("delta I is not in M_n(A) c");
  }
  data.checks.push_back("coefficient matrices of a and delta I lie in M_n(A) c: ok");

  out.u = flat.from_flat(u);
  out.u_inverse = flat.from_flat(*uinv);
  return out;
}

Certificate solve_pid_module(const SolveRequest& req) {
  const HomSpec& phi = req.phi;
  const RingPtr& s = phi.s;
  if (s->family() != RingFamily::matrix || s->base()->family() != RingFamily::polynomial || s->base()->nvars() != 1)
    return detail::unsupported(req, "pid-matrix", "pid-matrix backend needs S = M_n(F[x]), got " + s->name());
  const Flat flat(phi.r, s);
  const std::size_t dim = flat.rm->dimension();
  if (auto why = field_size_guard(s->base_field(), dim)) return detail::unsupported(req, "pid-matrix", *why);
  Certificate cert = detail::start_certificate(req, "pid-matrix");
  const Field f = s->base_field();
  const RatFunc zero = RatFunc::zero(f);

  // Intertwiners over K = F(x): phi(b_p) c = c b_p.
  Matrix<RatFunc> sys(phi.r->dimension() * dim, dim, zero);
  for (std::size_t p = 0; p < phi.r->dimension(); ++p) {
    const Matrix<RingElement> l = regular_representation(flat.to_flat(phi.images[p]));
    Vec xp(dim, FieldElement::zero(f));  // b_p (x) 1
    for (std::size_t i = 0; i < flat.n; ++i) xp[p * flat.n * flat.n + i * flat.n + i] = FieldElement::one(f);
    const FMatrix r = flat.rm->right_matrix(xp);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        sys(p * dim + i, j) = RatFunc(l(i, j).poly()) - RatFunc(Poly::constant(f, 1, r(i, j)));
  }
  std::vector<PolyRow> basis;
  for (const auto& v : kernel(sys, zero)) {
    Poly den = Poly::constant(f, 1, 1);
    for (const auto& x : v) den = lcm(den, x.den());
    PolyRow row;
    Poly content(f, 1);
    for (const auto& x : v) {
      row.push_back(*divide_exact(x.num() * den, x.den()));
      content = gcd(content, row.back());
    }
    for (auto& x : row) x = *divide_exact(x, content);
    basis.push_back(std::move(row));
  }
  cert.transcript.push_back("intertwiner space dimension " + std::to_string(basis.size()) + " over F(x)");

  std::mt19937_64 rng(req.seed);
  const long bound = static_cast<long>(2 * dim);
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  std::optional<TensorElement> a;
  for (unsigned t = 1; t <= req.trials && !basis.empty(); ++t) {
    std::vector<Poly> c(dim, Poly(f, 1));
    for (const auto& v : basis) {
      const long lambda = static_cast<long>(rng() % width) - bound;
      if (lambda == 0) continue;
      for (std::size_t i = 0; i < dim; ++i) c[i] += v[i].scaled(FieldElement(f, lambda));
    }
    cert.trials_used = t;
    std::vector<RingElement> coords;
    for (auto& x : c) coords.push_back(RingElement::from_poly(flat.a, std::move(x)));
    TensorElement cand(flat.rm, flat.a, std::move(coords));
    if (ring_determinant(regular_representation(cand)).is_zero()) continue;
    a = flat.from_flat(cand);
    cert.transcript.push_back("conjugator over F(x) found at trial " + std::to_string(t));
    break;
  }
  if (!a) {
    cert.status = Status::Exhausted;
    cert.message = "no intertwiner invertible over F(x) in " + std::to_string(req.trials) + " trials";
    return cert;
  }
  PidFactorization fac = factor_pid(*a);
  for (const auto& line : fac.data.checks) cert.transcript.push_back(line);
  cert.pid = std::move(fac.data);
  detail::finish_inner(cert, phi, fac.u);
  return cert;
}

}  // namespace snforge
