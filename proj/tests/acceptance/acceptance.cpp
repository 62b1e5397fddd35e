// Acceptance run: each criterion prints one PASS or FAIL line; the exit
// status is nonzero when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cli.hpp"
#include "gen.hpp"
#include "snforge/applications.hpp"
#include "snforge/backends.hpp"
#include "snforge/serialize.hpp"

using namespace snforge;
using snforge::testing::Gen;
using snforge::testing::kQ;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << s << " s";
  return o.str();
}

FieldElement q(long n) { return FieldElement(kQ, n); }

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("snforge-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

SolveRequest request(const HomSpec& phi, std::uint64_t seed) {
  SolveRequest req;
  req.phi = phi;
  req.seed = seed;
  req.trials = 64;
  return req;
}

void expect_conjugates(const HomSpec& phi, const TensorElement& c, const std::string& what) {
  const auto inv = tensor_invert(c);
  expect(inv.has_value(), what + ": conjugator not invertible");
  expect((c * *inv).is_one() && (*inv * c).is_one(), what + ": inverse not two-sided");
  for (std::size_t k = 0; k < phi.r->dimension(); ++k)
    expect(c * TensorElement::basis(phi.r, phi.s, k) * *inv == phi.images[k], what + ": c b_k c^-1 != phi(b_k)");
}

// Writes the problem and its certificate, then runs the recheck command on
// the files as a user would.
void expect_recheck(const io::Problem& p, const io::json& cert, const std::string& tag) {
  const std::string pp = (scratch() / (tag + ".problem.json")).string();
  const std::string cp = (scratch() / (tag + ".certificate.json")).string();
  std::ofstream(pp) << io::problem_to_json(p).dump(2) << "\n";
  std::ofstream(cp) << io::canonical_dump(cert) << "\n";
  std::ostringstream out, err;
  const int code = cli::cmd_recheck(pp, cp, out, err);
  expect(code == 0, tag + ": recheck exit " + std::to_string(code) + ": " + err.str());
}

TensorElement matrix_tensor(const AlgebraPtr& r, const RingPtr& s, std::size_t n, const std::vector<RingElement>& e) {
  TensorElement a = TensorElement::zero(r, s);
  for (std::size_t i = 0; i < n * n; ++i) a = a + TensorElement::pure(r, s, r->basis_vector(i), e[i]);
  return a;
}

// Leibniz expansion, used as the independent determinant.
RingElement leibniz(const Matrix<RingElement>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RingElement total = RingElement::zero(m(0, 0).ring());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    RingElement term = RingElement::one(m(0, 0).ring());
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

bool is_nonzero_constant(const RingElement& x) { return !x.is_zero() && x.poly().degree() == 0; }

// ---------------------------------------------------------------------------

std::string coefficient_extraction() {
  const auto t0 = Clock::now();
  Gen g(1001);
  const Field fp = Field::prime(10007);
  const std::vector<RingPtr> rings = {Ring::field(kQ), Ring::field(fp), Ring::polynomial(kQ, 1)};
  std::size_t pairs = 0;
  for (int i = 0; i < 200; ++i) {
    const RingPtr s = rings[static_cast<std::size_t>(i) % 3];
    const Field f = s->base_field();
    const int kind = (i / 3) % 3;
    const AlgebraPtr r = kind == 0   ? matrix_algebra(f, 2)
                         : kind == 1 ? matrix_algebra(f, 3)
                                     : quaternion_algebra(FieldElement(f, -1L), FieldElement(f, -1L));
    const bool poly = s->family() == RingFamily::polynomial;
    TensorElement a;
    if (kind == 2)
      // Units of H (x) Q[x] have constant norm, hence are constant.
      a = g.invertible(r, s, poly ? 0 : 1);
    else if (poly)
      a = g.unipotent(r, kind == 0 ? 2 : 3, s, 3, 1 + static_cast<unsigned>(g.index(3)));
    else
      a = g.invertible(r, s, 1);
    const HomSpec phi = require_hom(r, s, conjugation_images(a));
    const CoefficientTuple ct = extract_coefficients(phi);
    const std::size_t d = r->dimension();
    const std::string tag = "case " + std::to_string(i) + " (" + s->name() + ")";
    for (std::size_t p = 0; p < d; ++p) {
      TensorElement sum = TensorElement::zero(r, s);
      for (std::size_t k = 0; k < d; ++k)
        sum = sum + ct.c[k] * TensorElement::basis(r, s, p) * TensorElement::basis(r, s, k);
      expect(sum == phi.images[p], tag + ": phi(x) != sum c_k x b_k");
    }
    TensorElement unit = TensorElement::zero(r, s);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t p = 0; p < d; ++p)
        expect(phi.images[p] * ct.c[k] == ct.c[k] * TensorElement::basis(r, s, p), tag + ": phi(x) c_k != c_k x");
      unit = unit + ct.c[k] * TensorElement::basis(r, s, k);
    }
    expect(unit.is_one(), tag + ": sum c_k b_k != 1");
    for (std::size_t l = 0; l < d; ++l) {
      const DualSystem dual = dual_system(r, l);
      for (std::size_t k = 0; k < d; ++k) {
        expect(witness(phi, ct, k, dual) * ct.c[k] == TensorElement::from_s(r, ct.s[k][l]),
               tag + ": b_kl c_k != 1 (x) s_kl");
        ++pairs;
      }
    }
  }
  const double t = seconds_since(t0);
  expect(t < 60.0, "took " + fmt_seconds(t) + ", limit 60 s");
  return "200 homomorphisms, " + std::to_string(pairs) + " witness pairs, " + fmt_seconds(t);
}

std::string findim_completeness() {
  Gen g(1002);
  const std::vector<AlgebraPtr> rs = {matrix_algebra(kQ, 2), quaternion_algebra(q(-1), q(-1))};
  std::size_t max_dim = 0;
  for (int i = 0; i < 100; ++i) {
    const AlgebraPtr sa = g.findim_algebra(kQ, 6);
    max_dim = std::max(max_dim, sa->dimension());
    const RingPtr s = Ring::findim(sa);
    const AlgebraPtr r = rs[static_cast<std::size_t>(i) % 2];
    const HomSpec phi = require_hom(r, s, conjugation_images(g.invertible(r, s, 1)));
    const Certificate cert = solve_findim(request(phi, 500 + static_cast<std::uint64_t>(i)));
    const std::string tag = "findim-" + std::to_string(i);
    expect(cert.status == Status::Inner, tag + ": " + status_name(cert.status) + " " + cert.message);
    expect(cert.trials_used <= 64, tag + ": more than 64 trials");
    expect_conjugates(phi, *cert.conjugator, tag);
    const io::Problem p = io::solve_problem(phi);
    expect_recheck(p, io::certificate_to_json(cert, io::problem_digest(p)), tag);
  }
  return "100/100 Inner and rechecked, dim(S) up to " + std::to_string(max_dim);
}

std::string radical_identity() {
  Gen g(1003);
  for (int i = 0; i < 50; ++i) {
    const AlgebraPtr s = g.findim_algebra(kQ, 5);
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    const AlgebraPtr big = tensor_product(matrix_algebra(kQ, n), s);
    std::vector<Vec> expected;
    for (std::size_t u = 0; u < n * n; ++u)
      for (const Vec& r : jacobson_radical(*s)) {
        Vec v = big->zero_vector();
        for (std::size_t m = 0; m < s->dimension(); ++m) v[u * s->dimension() + m] = r[m];
        expected.push_back(v);
      }
    const Subspace direct(kQ, big->dimension(), jacobson_radical(*big));
    const Subspace built(kQ, big->dimension(), expected);
    const std::string tag = "case " + std::to_string(i);
    expect(direct.dimension() == built.dimension(), tag + ": dimensions differ");
    expect(direct.contains(built) && built.contains(direct), tag + ": subspaces differ");
  }
  return "50 algebras, n in {2, 3}";
}

std::string ufd_examples() {
  Gen g(1004);
  int solved = 0;
  for (std::size_t nv : {1u, 2u}) {
    const RingPtr s = Ring::polynomial(kQ, nv);
    for (int i = 0; i < 16; ++i) {
      const std::size_t n = i % 2 == 0 ? 2 : 3;
      const AlgebraPtr r = matrix_algebra(kQ, n);
      TensorElement a;
      if (i < 8) {
        a = g.unipotent(r, n, s, 2, 2);
      } else {
        // Companion matrix of t^n + a_{n-1} t^{n-1} + ... + a_0 with a_0 a
        // nonzero constant, hence of unit determinant.
        std::vector<RingElement> e(n * n, RingElement::zero(s));
        for (std::size_t k = 1; k < n; ++k) e[k * n + k - 1] = RingElement::one(s);
        e[n - 1] = RingElement::scalar(s, g.nonzero_scalar(kQ));
        for (std::size_t k = 1; k < n; ++k) e[k * n + n - 1] = g.element(s, 4);
        a = matrix_tensor(r, s, n, e) * g.unipotent(r, n, s, 1, 2);
      }
      const HomSpec phi = require_hom(r, s, conjugation_images(a));
      const Certificate cert = solve_ufd(request(phi, 700 + static_cast<std::uint64_t>(i)));
      const std::string tag = s->name() + " case " + std::to_string(i);
      expect(cert.status == Status::Inner, tag + ": " + status_name(cert.status) + " " + cert.message);
      expect_conjugates(phi, *cert.conjugator, tag);
      const auto ratio = unit_part(*tensor_invert(a) * *cert.conjugator);
      expect(ratio.has_value(), tag + ": a^-1 c not in 1 (x) S");
      expect(ring_is_unit(*ratio), tag + ": a^-1 c not a unit");
      ++solved;
    }
  }
  return std::to_string(solved) + " unipotent and companion conjugations Inner";
}

std::string elliptic_counterexample() {
  const auto t0 = Clock::now();
  const RingPtr s = Ring::curve(kQ);
  const AlgebraPtr m2 = matrix_algebra(kQ, 2);
  auto el = [&](const std::string& text) { return io::parse_element(s, text); };
  const TensorElement a = matrix_tensor(m2, s, 2, {el("y"), el("x"), el("x^2"), el("y")});
  const HomValidation v = validate_hom(m2, s, conjugation_images(a));
  expect(v.ok(), "a e_ij a^-1 does not give a homomorphism into M_2(S)");
  expect(v.hom->images.size() == 4, "expected 4 images");
  SolveRequest req = request(*v.hom, 0);
  req.presentation = a;
  const Certificate cert = certify_not_inner_curve(req);
  const double t = seconds_since(t0);
  expect(cert.status == Status::NotInner, "status " + status_name(cert.status) + ": " + cert.message);
  expect(cert.curve.has_value(), "no curve analysis");
  expect(cert.curve->delta == el("x"), "det(a) = " + cert.curve->delta.to_string());
  expect(cert.curve->branches.size() == 2, "expected two branches");
  for (const auto& b : cert.curve->branches) expect(b.refuted, "branch " + b.name + " survives");
  expect(t < 1.0, "took " + fmt_seconds(t) + ", limit 1 s");
  const io::Problem p = io::solve_problem(*v.hom, a);
  expect_recheck(p, io::certificate_to_json(cert, io::problem_digest(p)), "elliptic");
  return "det(a) = x, both branches refuted, " + fmt_seconds(t) + ", rechecked";
}

// R (x) M_n(A) as an (n * dim R)-square matrix over A.
Matrix<RingElement> flatten_pid(const TensorElement& u, std::size_t rn, std::size_t n) {
  const RingPtr a = u.s()->base();
  Matrix<RingElement> m(rn * n, rn * n, RingElement::zero(a));
  for (std::size_t ri = 0; ri < rn; ++ri)
    for (std::size_t rj = 0; rj < rn; ++rj) {
      const auto& parts = u.coord(ri * rn + rj).parts();
      for (std::size_t si = 0; si < n; ++si)
        for (std::size_t sj = 0; sj < n; ++sj) m(ri * n + si, rj * n + sj) = parts[si * n + sj];
    }
  return m;
}

std::string pid_examples() {
  Gen g(1006);
  const RingPtr ar = Ring::polynomial(kQ, 1);
  const std::size_t n = 2;
  const RingPtr s = Ring::matrix(ar, n);
  const AlgebraPtr r = matrix_algebra(kQ, 2);
  auto s_unit = [&](std::size_t k, std::size_t l, const RingElement& t) {
    std::vector<RingElement> e(n * n, RingElement::zero(ar));
    e[k * n + l] = t;
    return RingElement::matrix(s, e);
  };
  for (int i = 0; i < 20; ++i) {
    const std::string tag = "pid-" + std::to_string(i);
    // u0: product of 1 + e_ij (x) t e_kl with (i, k) != (j, l), each of
    // square zero, so u0 is unimodular.
    TensorElement u0 = TensorElement::one(r, s);
    for (int f = 0; f < 3; ++f) {
      std::size_t ri, rj, si, sj;
      do {
        ri = g.index(2), rj = g.index(2), si = g.index(n), sj = g.index(n);
      } while (ri == rj && si == sj);
      const RingElement t = RingElement::from_poly(ar, g.poly(kQ, 1, 1 + static_cast<unsigned>(g.index(3))));
      u0 = u0 * (TensorElement::one(r, s) + TensorElement::pure(r, s, r->basis_vector(ri * 2 + rj), s_unit(si, sj, t)));
    }
    std::vector<RingElement> diag(n * n, RingElement::zero(ar));
    for (std::size_t k = 0; k < n; ++k) diag[k * n + k] = RingElement::from_poly(ar, g.nonzero_poly(kQ, 1, 3));
    const RingElement c0 = RingElement::matrix(s, diag);
    const TensorElement a = u0 * TensorElement::from_s(r, c0);

    // Inn(a) agrees with Inn(u0) on R since 1 (x) c0 commutes with R (x) 1.
    const HomSpec phi = require_hom(r, s, conjugation_images(u0));
    const Certificate cert = dispatch(request(phi, 900 + static_cast<std::uint64_t>(i)));
    expect(cert.backend == "pid-matrix", tag + ": dispatched to " + cert.backend);
    expect(cert.status == Status::Inner, tag + ": " + status_name(cert.status) + " " + cert.message);
    expect_conjugates(phi, *cert.conjugator, tag);
    const Matrix<RingElement> um = flatten_pid(*cert.conjugator, 2, n);
    const RingElement det_u = ring_determinant(um);
    expect(det_u == leibniz(um), tag + ": determinant disagrees with the Leibniz expansion");
    expect(is_nonzero_constant(det_u), tag + ": det(u) = " + det_u.to_string() + " is not in Q^x");

    // Factorization of the hidden a = u0 (1 (x) c0).
    const PidFactorization fac = factor_pid(a);
    expect(fac.data.checks.size() == 3, tag + ": expected three characterization checks");
    std::vector<RingElement> cm;
    for (const auto& row : fac.data.c)
      for (const auto& x : row) cm.push_back(RingElement::from_poly(ar, x));
    const RingElement c = RingElement::matrix(s, cm);
    expect(fac.u * TensorElement::from_s(r, c) == a, tag + ": a != u (1 (x) c)");
    expect((fac.u * fac.u_inverse).is_one() && (fac.u_inverse * fac.u).is_one(), tag + ": u not invertible");
    const Matrix<RingElement> fm = flatten_pid(fac.u, 2, n);
    expect(is_nonzero_constant(leibniz(fm)), tag + ": det of the factor u is not in Q^x");

    // Membership: r in M(a) iff (1 (x) r e_1) adj(a) = 0 mod delta.
    auto in_module = [&](const std::vector<Poly>& row) {
      std::vector<RingElement> e(n * n, RingElement::zero(ar));
      for (std::size_t j = 0; j < n; ++j) e[j] = RingElement::from_poly(ar, row[j]);
      const TensorElement t = TensorElement::from_s(r, RingElement::matrix(s, e)) * fac.data.adj;
      for (const auto& coord : t.coords())
        for (const auto& x : coord.parts())
          if (!ring_divide(x, fac.data.delta)) return false;
      return true;
    };
    // Module basis: every generator g solves g = x c with x integral.
    Matrix<RingElement> ct(n, n, RingElement::zero(ar));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) ct(l, k) = RingElement::from_poly(ar, fac.data.c[k][l]);
    auto in_span = [&](const std::vector<Poly>& row) {
      std::vector<RingElement> rhs;
      for (const auto& p : row) rhs.push_back(RingElement::from_poly(ar, p));
      const BareissSolution sol = bareiss_solve(ct, rhs);
      if (sol.determinant.is_zero()) return false;
      for (const auto& x : sol.adjugate_rhs)
        if (!ring_divide(x, sol.determinant)) return false;
      return true;
    };
    for (const auto& row : fac.data.c) expect(in_module(row), tag + ": a row of c is not in M(a)");
    for (const auto& gen : fac.data.generators) {
      expect(in_module(gen), tag + ": a generator is not in M(a)");
      expect(in_span(gen), tag + ": a generator is outside the row span of c");
    }
    // M(a) is the row module of c0, so det c and det c0 agree up to Q^x.
    Matrix<RingElement> c0m(n, n, RingElement::zero(ar));
    for (std::size_t k = 0; k < n; ++k) c0m(k, k) = diag[k * n + k];
    const auto ratio = ring_divide(ring_determinant(ct), ring_determinant(c0m));
    expect(ratio && is_nonzero_constant(*ratio), tag + ": det c / det c0 is not in Q^x");
  }
  return "20 instances solved, det(u) in Q^x, membership = basis = factorization";
}

std::string series_lifting() {
  Gen g(1007);
  const std::vector<RingPtr> bases = {Ring::field(kQ), Ring::findim(truncated_polynomial_algebra(kQ, 2))};
  const AlgebraPtr m2 = matrix_algebra(kQ, 2);
  int coherent = 0;
  for (int i = 0; i < 20; ++i) {
    const RingPtr base = bases[static_cast<std::size_t>(i) % 2];
    const RingPtr s = Ring::series(base, 8);
    const AlgebraPtr r = i % 4 < 2 ? m2 : quaternion_algebra(q(-1), q(-1));
    const TensorElement a = r == m2 ? g.unipotent(r, 2, s, 3, 2) : g.invertible(r, s, 1);
    const HomSpec phi = require_hom(r, s, conjugation_images(a));
    const std::uint64_t seed = 1100 + static_cast<std::uint64_t>(i);
    const Certificate cert = solve_power_series(request(phi, seed));
    const std::string tag = "series-" + std::to_string(i) + " over " + base->name();
    expect(cert.status == Status::Inner, tag + ": " + status_name(cert.status) + " " + cert.message);
    expect_conjugates(phi, *cert.conjugator, tag);
    const cli::CoherenceResult coh = cli::series_coherence(phi, 4, seed, 64);
    expect(coh.identical, tag + ": truncated certificate differs from the direct one");
    ++coherent;
  }
  return std::to_string(coherent) + " instances Inner, truncation to order 4 byte-identical";
}

std::string automorphism_round_trips() {
  Gen g(1008);
  const AlgebraPtr m2 = matrix_algebra(kQ, 2);
  const RingPtr poly = Ring::polynomial(kQ, 1);
  const RingPtr dual = Ring::findim(truncated_polynomial_algebra(kQ, 2));
  for (int i = 0; i < 20; ++i) {
    const bool use_poly = i % 2 == 0;
    const RingPtr s = use_poly ? poly : dual;
    const TensorElement c0 = g.unipotent(m2, 2, s, 2, 2);
    std::vector<RingElement> sigma;
    if (use_poly) {
      // x -> lambda x + mu
      const long lambda = g.coin() ? g.integer(1, 3) : -g.integer(1, 3);
      sigma.push_back(RingElement::from_poly(s, Poly::from_coefficients(kQ, {g.integer(-3, 3), lambda})));
    } else {
      sigma.push_back(RingElement::one(s));
      sigma.push_back(RingElement::findim(s, {q(0), g.nonzero_scalar(kQ)}));
    }
    const AutSpec psi = twisted_inner_automorphism(c0, sigma);
    const AutDecomposition d = decompose_automorphism(psi, 1200 + static_cast<std::uint64_t>(i));
    const std::string tag = "aut-" + std::to_string(i) + " over " + s->name();
    expect(d.status == Status::Inner, tag + ": " + status_name(d.status));
    expect(d.sigma == sigma, tag + ": sigma not recovered");
    // Inn(c) o (id (x) sigma) = psi on the matrix units and on the generators of S.
    const AutSpec rebuilt = twisted_inner_automorphism(*d.c, d.sigma);
    for (std::size_t k = 0; k < psi.forward.unit_images.size(); ++k)
      expect(rebuilt.forward.unit_images[k] == psi.forward.unit_images[k], tag + ": unit image differs");
    for (std::size_t k = 0; k < psi.forward.generator_images.size(); ++k)
      expect(rebuilt.forward.generator_images[k] == psi.forward.generator_images[k], tag + ": generator image differs");
    expect((*d.c * *d.c_inverse).is_one(), tag + ": c c^-1 != 1");
  }
  return "20 round trips recover (c, sigma)";
}

std::string derivations() {
  Gen g(1009);
  const std::vector<AlgebraPtr> rs = {matrix_algebra(kQ, 2), quaternion_algebra(q(-1), q(-1))};
  for (int i = 0; i < 50; ++i) {
    const AlgebraPtr r = rs[static_cast<std::size_t>(i) % 2];
    const Bimodule m = regular_bimodule(r);
    const Vec mm = g.vec(kQ, r->dimension());
    const DerivationSpec d = validate_derivation(m, inner_derivation(m, mm).values);
    const DerivationWitness w = inner_derivation_witness(d, 1300 + static_cast<std::uint64_t>(i));
    const std::string tag = "derivation-" + std::to_string(i);
    expect(w.status == Status::Inner, tag + ": " + status_name(w.status));
    for (std::size_t k = 0; k < r->dimension(); ++k) {
      const Vec rk = r->basis_vector(k);
      const Vec wr = r->multiply(w.w, rk), rw = r->multiply(rk, w.w);
      Vec comm(r->dimension(), FieldElement::zero(kQ));
      for (std::size_t j = 0; j < comm.size(); ++j) comm[j] = wr[j] - rw[j];
      expect(comm == d.values[k], tag + ": d(r_k) != w r_k - r_k w");
    }
    Vec z(r->dimension(), FieldElement::zero(kQ));
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = w.w[j] - mm[j];
    for (std::size_t k = 0; k < r->dimension(); ++k)
      expect(r->multiply(z, r->basis_vector(k)) == r->multiply(r->basis_vector(k), z), tag + ": w - m not central");
  }
  return "50 inner derivations on M_2(Q) and H(-1,-1)";
}

std::string flip_check() {
  std::ostringstream detail;
  auto check_inner = [&](const std::string& name, const AlgebraPtr& r) {
    const FlipResult f = flip_innerness_check(r, 77);
    expect(f.inner && f.c && f.c_inverse, name + ": flip not found inner");
    const AlgebraPtr t = f.tensor_square;
    const std::size_t d = r->dimension();
    expect(t->multiply(*f.c, *f.c_inverse) == t->unit() && t->multiply(*f.c_inverse, *f.c) == t->unit(),
           name + ": c c^-1 != 1");
    // c (x (x) 1) c^-1 = 1 (x) x on the basis.
    for (std::size_t k = 0; k < d; ++k) {
      Vec x1 = t->zero_vector(), one_x = t->zero_vector();
      for (std::size_t i = 0; i < d; ++i) {
        x1[k * d + i] = r->unit()[i];
        one_x[i * d + k] = r->unit()[i];
      }
      expect(t->multiply(t->multiply(*f.c, x1), *f.c_inverse) == one_x, name + ": c (x (x) 1) c^-1 != 1 (x) x");
    }
    detail << name << " inner; ";
  };
  auto check_outer = [&](const std::string& name, const AlgebraPtr& r) {
    const FlipResult f = flip_innerness_check(r, 77);
    expect(!f.inner, name + ": flip reported inner");
    expect(!f.defect.empty(), name + ": no defect reported");
    detail << name << " not inner; ";
  };
  check_inner("M_2(Q)", matrix_algebra(kQ, 2));
  check_inner("M_3(Q)", matrix_algebra(kQ, 3));
  check_inner("H(-1,-1)", quaternion_algebra(q(-1), q(-1)));
  check_outer("Q x Q", diagonal_algebra(kQ, 2));
  check_outer("Q[t]/(t^2)", truncated_polynomial_algebra(kQ, 2));
  check_outer("UT_2(Q)", upper_triangular_algebra(kQ, 2));
  std::string s = detail.str();
  return s.substr(0, s.size() - 2);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {"coefficient extraction and witnesses", coefficient_extraction},
      {"finite-dimensional solver completeness", findim_completeness},
      {"radical of matrix algebras", radical_identity},
      {"UFD solver", ufd_examples},
      {"elliptic curve refutation", elliptic_counterexample},
      {"matrix over F[x] solver", pid_examples},
      {"power series lifting", series_lifting},
      {"automorphism decomposition", automorphism_round_trips},
      {"inner derivations", derivations},
      {"flip innerness", flip_check},
  };
  std::cout << "seed " << snforge::testing::base_seed() << "\n";
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    std::string result;
    bool ok = false;
    try {
      result = criteria[i].run();
      ok = true;
    } catch (const std::exception& e) {
      result = e.what();
    }
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].name << ": " << result
              << " [" << fmt_seconds(seconds_since(t0)) << "]" << std::endl;
  }
  std::error_code ec;
  fs::remove_all(scratch(), ec);
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
