#include "snforge/recheck.hpp"

#include <stdexcept>

#include "snforge/error.hpp"

namespace snforge {

using io::json;

namespace {

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Checker {
  std::vector<std::string> checks;
  void require(bool cond, const std::string& what) {
    if (!cond) throw CheckFailed(what);
    checks.push_back(what + ": ok");
  }
};

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError((path.empty() ? "/" : path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError((path.empty() ? "/" : path) + ": missing field \"" + key + "\"");
  return *it;
}

std::string text(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_string()) throw InputError(path + "/" + key + ": expected a string");
  return v.get<std::string>();
}

Status status_from(const std::string& s, const std::string& path) {
  for (Status st : {Status::Inner, Status::NotInner, Status::Unsupported, Status::Exhausted})
    if (status_name(st) == s) return st;
  throw InputError(path + "/status: unknown status \"" + s + "\"");
}

// ---------------------------------------------------------------------------
// Square tests over F[x], kept apart from the solver's monic_sqrt.

Poly yun_part(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw InternalError("squarefree decomposition: inexact division");
  return *q;
}

// Yun's algorithm on a monic f: f = prod a_i^i with the a_i squarefree and
// pairwise coprime.
std::vector<Poly> yun(const Poly& f) {
  std::vector<Poly> out;
  const Poly df = derivative(f);
  Poly a0 = gcd(f, df);
  Poly b = yun_part(f, a0);
  Poly c = yun_part(df, a0);
  Poly d = c - derivative(b);
  while (b.degree() > 0) {
    Poly a = gcd(b, d);
    out.push_back(a);
    b = yun_part(b, a);
    c = yun_part(d, a);
    d = c - derivative(b);
  }
  return out;
}

bool is_square_free_factorable(const Poly& f) {
  // Yun needs f' to carry the multiplicities: fine in characteristic 0 or
  // above the degree.
  const std::uint64_t p = f.field().characteristic();
  return p == 0 || static_cast<std::uint64_t>(f.degree()) < p;
}

bool divides(const Poly& d, const Poly& a) { return divmod(a, d).second.is_zero(); }

// gamma with h = gamma * root^2 is the leading coefficient; this only
// decides whether the monic part is a square.
bool constant_times_square(const Poly& h) { return squarefree_square_root(h).has_value(); }

// A full square root (leading coefficient included), up to sign.
std::optional<Poly> exact_square_root(const Poly& h) {
  if (h.is_zero()) return Poly(h.field(), h.nvars());
  auto lc = h.leading_coefficient().sqrt();
  auto r = squarefree_square_root(h);
  if (!lc || !r) return std::nullopt;
  return r->scaled(*lc);
}

struct BranchVerdict {
  std::string name;
  bool refuted;
};

// Which f = p + q y could satisfy det(a) = P + Q y = gamma f^2, case by case.
std::vector<BranchVerdict> curve_branches(const Poly& big_p, const Poly& big_q, const Poly& g) {
  std::vector<BranchVerdict> out;
  const Field f = big_p.field();
  if (big_q.is_zero()) {
    bool p_zero = false;
    if (!big_p.is_zero() && divides(g, big_p)) p_zero = constant_times_square(divmod(big_p, g).first);
    out.push_back({"p = 0", !p_zero});
    out.push_back({"q = 0", !constant_times_square(big_p)});
    return out;
  }
  const Poly norm = big_p * big_p - big_q * big_q * g;
  auto s = exact_square_root(norm);
  if (!s) {
    out.push_back({"p q != 0", true});
    return out;
  }
  const FieldElement half = FieldElement(f, 2L).inverse();
  for (int sign : {1, -1}) {
    const Poly root = sign > 0 ? *s : -*s;
    const Poly a = (big_p + root).scaled(half), b = (big_p - root).scaled(half);
    bool survives = false;
    if (!a.is_zero() && !b.is_zero() && divides(g, b)) {
      auto p = squarefree_square_root(a);
      const FieldElement gamma = a.leading_coefficient();
      auto q = exact_square_root(divmod(b, g).first.scaled(gamma.inverse()));
      if (p && q) {
        const Poly two_gamma_pq = (*p * *q).scaled(gamma * FieldElement(f, 2L));
        survives = two_gamma_pq == big_q || two_gamma_pq == -big_q;
      }
    }
    out.push_back({sign > 0 ? "p q != 0, sign +" : "p q != 0, sign -", !survives});
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SolveContext {
  AlgebraPtr r;
  RingPtr s;
  std::vector<TensorElement> images;
  std::optional<TensorElement> presentation;
};

SolveContext project(const SolveContext& ctx, const RingPtr& target,
                     const std::function<RingElement(const RingElement&)>& f) {
  auto map = [&](const TensorElement& u) {
    std::vector<RingElement> coords;
    for (const auto& x : u.coords()) coords.push_back(f(x));
    return TensorElement(u.r(), target, std::move(coords));
  };
  SolveContext out{ctx.r, target, {}, std::nullopt};
  for (const auto& img : ctx.images) out.images.push_back(map(img));
  if (ctx.presentation) out.presentation = map(*ctx.presentation);
  return out;
}

void check_conjugator(Checker& ck, const SolveContext& ctx, const TensorElement& c, const TensorElement& inv,
                      const std::string& where) {
  const TensorElement one = TensorElement::one(ctx.r, ctx.s);
  ck.require(c * inv == one, where + "c c^-1 = 1");
  ck.require(inv * c == one, where + "c^-1 c = 1");
  for (std::size_t k = 0; k < ctx.r->dimension(); ++k)
    ck.require(ctx.images[k] * c == c * TensorElement::basis(ctx.r, ctx.s, k),
               where + "phi(" + ctx.r->labels()[k] + ") c = c " + ctx.r->labels()[k]);
}

void check_curve(Checker& ck, const SolveContext& ctx, const json& cj, Status status,
                 const std::optional<TensorElement>& c, const std::string& path) {
  ck.require(ctx.presentation.has_value(), "curve data comes with a conjugation presentation a");
  const TensorElement& a = *ctx.presentation;
  const RingElement det = a.coord(0) * a.coord(3) - a.coord(1) * a.coord(2);
  const RingElement delta = io::element_from_json(ctx.s, field(cj, "delta", path), path + "/delta");
  ck.require(det == delta, "det(a) = " + delta.to_string());

  std::optional<RingElement> f;
  std::optional<FieldElement> gamma;
  if (cj.contains("f")) f = io::element_from_json(ctx.s, cj["f"], path + "/f");
  if (cj.contains("gamma")) gamma = FieldElement::parse(ctx.s->base_field(), text(cj, "gamma", path));
  if (f || gamma) {
    ck.require(f && gamma && !gamma->is_zero(), "f and gamma are given together");
    ck.require(scale(*gamma, *f * *f) == delta, "gamma f^2 = det(a)");
  }

  // branch claims against an independent case analysis
  const auto& dc = delta.curve_coords();
  const auto verdicts = curve_branches(dc.a, dc.b, ctx.s->curve_g());
  const json& branches = field(cj, "branches", path);
  if (!branches.is_array()) throw InputError(path + "/branches: expected an array");
  ck.require(branches.size() == verdicts.size(), "branch list covers the cases of det(a)");
  bool all_refuted = true;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const std::string bp = path + "/branches/" + std::to_string(i);
    const std::string name = text(branches[i], "name", bp);
    const json& refuted = field(branches[i], "refuted", bp);
    if (!refuted.is_boolean()) throw InputError(bp + "/refuted: expected true or false");
    ck.require(name == verdicts[i].name, "branch " + std::to_string(i) + " is \"" + verdicts[i].name + "\"");
    ck.require(refuted.get<bool>() == verdicts[i].refuted,
               "branch " + name + (verdicts[i].refuted ? " is refuted" : " is solvable"));
    all_refuted = all_refuted && verdicts[i].refuted;
  }

  if (status == Status::NotInner) {
    if (cj.contains("nondivisible_entry")) {
      ck.require(f.has_value(), "a nondivisibility claim names f");
      const json& e = cj["nondivisible_entry"];
      if (!e.is_number_unsigned() || e.get<std::size_t>() >= 4)
        throw InputError(path + "/nondivisible_entry: expected 0..3");
      const std::size_t idx = e.get<std::size_t>();
      // a_idx / f is integral iff N(f) divides both coordinates of a_idx conj(f)
      const auto& fc = f->curve_coords();
      const RingElement conj = RingElement::curve(ctx.s, fc.a, -fc.b);
      const Poly nf = fc.a * fc.a - fc.b * fc.b * ctx.s->curve_g();
      const auto& num = (a.coord(idx) * conj).curve_coords();
      ck.require(!nf.is_zero() && (!divides(nf, num.a) || !divides(nf, num.b)),
                 "f does not divide entry " + ctx.r->labels()[idx] + " of a");
    } else {
      ck.require(all_refuted && !f, "every branch is refuted, so det(a) is not gamma f^2");
    }
  } else if (status == Status::Inner) {
    ck.require(f.has_value() && c.has_value(), "an Inner curve certificate names f and c");
    ck.require(*c * TensorElement::from_s(ctx.r, *f) == a, "c (1 (x) f) = a");
  }
}

void check_pid(Checker& ck, const SolveContext& ctx, const json& pj, const TensorElement& u, const std::string& path) {
  const RingPtr& s = ctx.s;
  const RingPtr& ar = s->base();
  const std::size_t n = s->matrix_size();
  const TensorElement a = io::tensor_from_json(ctx.r, s, field(pj, "a", path), path + "/a");
  const TensorElement adj = io::tensor_from_json(ctx.r, s, field(pj, "adj", path), path + "/adj");
  const RingElement delta = io::element_from_json(ar, field(pj, "delta", path), path + "/delta");
  const json& cj = field(pj, "c", path);
  if (!cj.is_array() || cj.size() != n) throw InputError(path + "/c: expected " + std::to_string(n) + " rows");
  std::vector<RingElement> entries;
  for (std::size_t i = 0; i < n; ++i) {
    if (!cj[i].is_array() || cj[i].size() != n)
      throw InputError(path + "/c/" + std::to_string(i) + ": expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      entries.push_back(io::element_from_json(ar, cj[i][j], path + "/c/" + std::to_string(i) + "/" + std::to_string(j)));
  }
  const RingElement c = RingElement::matrix(s, entries);

  std::vector<RingElement> scalar(n * n, RingElement::zero(ar));
  for (std::size_t i = 0; i < n; ++i) scalar[i * n + i] = delta;
  ck.require(!delta.is_zero() && a * adj == TensorElement::from_s(ctx.r, RingElement::matrix(s, scalar)),
             "a adj = delta");
  for (std::size_t k = 0; k < ctx.r->dimension(); ++k)
    ck.require(a * TensorElement::basis(ctx.r, s, k) * adj ==
                   ctx.images[k] * TensorElement::from_s(ctx.r, RingElement::matrix(s, scalar)),
               "a " + ctx.r->labels()[k] + " adj = delta phi(" + ctx.r->labels()[k] + ")");
  ck.require(a == u * TensorElement::from_s(ctx.r, c), "a = u (1 (x) c)");
  // rows of c lie in M(a): (1 (x) c) adj vanishes modulo delta
  const TensorElement m = TensorElement::from_s(ctx.r, c) * adj;
  bool reduced = true;
  for (const auto& x : m.coords())
    for (const auto& e : x.parts())
      if (!divides(delta.poly(), e.poly())) reduced = false;
  ck.require(reduced, "rows of c lie in M(a)");
  ck.require(!ring_determinant([&] {
                Matrix<RingElement> mm(n, n, RingElement::zero(ar));
                for (std::size_t i = 0; i < n; ++i)
                  for (std::size_t j = 0; j < n; ++j) mm(i, j) = entries[i * n + j];
                return mm;
              }())
                  .is_zero(),
             "c has full rank");
}

void check_coefficients(Checker& ck, const SolveContext& ctx, const json& cj, const std::string& path) {
  const std::size_t d = ctx.r->dimension();
  const json& cs = field(cj, "c", path);
  const json& ss = field(cj, "s", path);
  if (!cs.is_array() || cs.size() != d || !ss.is_array() || ss.size() != d)
    throw InputError(path + ": expected " + std::to_string(d) + " coefficients");
  std::vector<TensorElement> c;
  for (std::size_t k = 0; k < d; ++k) {
    c.push_back(io::tensor_from_json(ctx.r, ctx.s, cs[k], path + "/c/" + std::to_string(k)));
    const TensorElement from_s = io::tensor_from_json(ctx.r, ctx.s, ss[k], path + "/s/" + std::to_string(k));
    ck.require(c[k] == from_s, "c_" + ctx.r->labels()[k] + " = sum_l b_l (x) s_kl");
  }
  TensorElement sum = TensorElement::zero(ctx.r, ctx.s);
  for (std::size_t k = 0; k < d; ++k) sum = sum + c[k] * TensorElement::basis(ctx.r, ctx.s, k);
  ck.require(sum == TensorElement::one(ctx.r, ctx.s), "sum_k c_k b_k = 1");
  for (std::size_t p = 0; p < d; ++p) {
    const TensorElement bp = TensorElement::basis(ctx.r, ctx.s, p);
    TensorElement rhs = TensorElement::zero(ctx.r, ctx.s);
    for (std::size_t k = 0; k < d; ++k) rhs = rhs + c[k] * bp * TensorElement::basis(ctx.r, ctx.s, k);
    ck.require(ctx.images[p] == rhs, "phi(" + ctx.r->labels()[p] + ") = sum_k c_k b b_k");
    for (std::size_t k = 0; k < d; ++k)
      ck.require(ctx.images[p] * c[k] == c[k] * bp,
                 "phi(" + ctx.r->labels()[p] + ") c_" + ctx.r->labels()[k] + " = c_k " + ctx.r->labels()[p]);
  }
}

void check_solve_body(Checker& ck, const SolveContext& ctx, const json& body, const std::string& path) {
  const Status status = status_from(text(body, "status", path), path);
  const std::string backend = text(body, "backend", path);
  std::optional<TensorElement> c, inv;
  if (status == Status::Inner) {
    c = io::tensor_from_json(ctx.r, ctx.s, field(body, "conjugator", path), path + "/conjugator");
    inv = io::tensor_from_json(ctx.r, ctx.s, field(body, "inverse", path), path + "/inverse");
    check_conjugator(ck, ctx, *c, *inv, path.empty() ? "" : path + ": ");
  } else if (status == Status::NotInner) {
    ck.require(body.contains("curve"), "a NotInner certificate carries a curve refutation");
  }
  if (body.contains("curve")) check_curve(ck, ctx, body["curve"], status, c, path + "/curve");
  if (body.contains("pid")) {
    ck.require(c.has_value(), "PID data comes with a conjugator");
    check_pid(ck, ctx, body["pid"], *c, path + "/pid");
  }
  if (body.contains("coefficients")) check_coefficients(ck, ctx, body["coefficients"], path + "/coefficients");
  if (body.contains("parts")) {
    const json& parts = body["parts"];
    if (backend == "product") {
      if (!parts.is_array() || parts.size() > 2) throw InputError(path + "/parts: expected at most 2 parts");
      for (std::size_t i = 0; i < parts.size(); ++i) {
        SolveContext sub = project(ctx, ctx.s->factor(i), [i](const RingElement& x) { return x.parts()[i]; });
        check_solve_body(ck, sub, parts[i], path + "/parts/" + std::to_string(i));
      }
    } else if (backend == "series") {
      if (!parts.is_array() || parts.size() != 1) throw InputError(path + "/parts: expected one part");
      SolveContext sub = project(ctx, ctx.s->base(), [](const RingElement& x) { return x.parts()[0]; });
      check_solve_body(ck, sub, parts[0], path + "/parts/0");
    } else {
      throw InputError(path + "/parts: backend " + backend + " has no parts");
    }
  }
}

void check_solve(Checker& ck, const io::Problem& p, const json& cert) {
  SolveContext ctx{p.r, p.s, p.images, p.conjugator};
  if (ctx.images.empty()) ctx.images = conjugation_images(*p.conjugator);
  else if (p.conjugator)
    ck.require(conjugation_images(*p.conjugator) == p.images, "the problem's images come from its conjugator");
  require_hom(ctx.r, ctx.s, ctx.images);
  check_solve_body(ck, ctx, cert, "");
}

void check_aut(Checker& ck, const io::Problem& p, const json& cert) {
  const AutSpec psi = validate_automorphism(p.s, p.n, *p.automorphism, p.inverse);
  const Status status = status_from(text(cert, "status", ""), "");
  SolveContext ctx{psi.r, psi.s, psi.forward.unit_images, std::nullopt};
  check_solve_body(ck, ctx, field(cert, "restriction", ""), "/restriction");
  if (status != Status::Inner) return;
  const TensorElement c = io::tensor_from_json(psi.r, psi.s, field(cert, "conjugator", ""), "/conjugator");
  const TensorElement inv = io::tensor_from_json(psi.r, psi.s, field(cert, "inverse", ""), "/inverse");
  check_conjugator(ck, ctx, c, inv, "");
  const auto gens = ring_generators(psi.s);
  auto table = [&](const char* key) {
    const json& t = field(cert, key, "");
    if (!t.is_array() || t.size() != gens.size())
      throw InputError(std::string("/") + key + ": expected " + std::to_string(gens.size()) + " entries");
    std::vector<RingElement> images;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const std::string path = std::string("/") + key + "/" + std::to_string(g);
      const RingElement gen = io::element_from_json(psi.s, field(t[g], "generator", path), path + "/generator");
      ck.require(gen == gens[g], std::string(key) + " entry " + std::to_string(g) + " is for " + gens[g].to_string());
      images.push_back(io::element_from_json(psi.s, field(t[g], "image", path), path + "/image"));
    }
    return images;
  };
  const auto sigma = table("sigma");
  const auto sigma_inv = table("sigma_inverse");
  ck.require(!substitution_defect(psi.s, sigma), "sigma respects the relations of S");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    ck.require(c * TensorElement::from_s(psi.r, sigma[g]) * inv == psi.forward.generator_images[g],
               "c (1 (x) sigma(" + gens[g].to_string() + ")) c^-1 = psi(1 (x) " + gens[g].to_string() + ")");
    ck.require(substitute(sigma_inv[g], sigma) == gens[g], "sigma o sigma' fixes " + gens[g].to_string());
    ck.require(substitute(sigma[g], sigma_inv) == gens[g], "sigma' o sigma fixes " + gens[g].to_string());
  }
}

void check_derivation(Checker& ck, const io::Problem& p, const json& cert) {
  const DerivationSpec d = validate_derivation(*p.bimodule, p.values);
  const Status status = status_from(text(cert, "status", ""), "");
  if (status != Status::Inner) return;
  const Field f = p.r->field();
  const std::size_t m = d.m.dimension;
  const FieldElement t = FieldElement::parse(f, text(cert, "t", ""));
  ck.require(!t.is_zero(), "t is a nonzero scalar");
  for (const char* key : {"w", "raw"}) {
    const Vec w = io::vec_from_json(f, m, field(cert, key, ""), std::string("/") + key);
    for (std::size_t k = 0; k < p.r->dimension(); ++k) {
      const Vec x = p.r->basis_vector(k);
      Vec rhs = d.m.act_right(w, x);
      const Vec xw = d.m.act_left(x, w);
      for (std::size_t q = 0; q < m; ++q) rhs[q] -= xw[q];
      ck.require(rhs == d.values[k], std::string("d(") + p.r->labels()[k] + ") = " + key + " x - x " + key);
    }
  }
}

void check_flip(Checker& ck, const io::Problem& p, const json& cert) {
  const AlgebraPtr& r = p.r;
  const std::size_t d = r->dimension();
  const json& inner = field(cert, "inner", "");
  if (!inner.is_boolean()) throw InputError("/inner: expected true or false");
  const AlgebraPtr t = tensor_product(r, r);
  if (inner.get<bool>()) {
    const Vec c = io::vec_from_json(r->field(), d * d, field(cert, "conjugator", ""), "/conjugator");
    const Vec inv = io::vec_from_json(r->field(), d * d, field(cert, "inverse", ""), "/inverse");
    ck.require(t->multiply(c, inv) == t->unit() && t->multiply(inv, c) == t->unit(), "c c^-1 = c^-1 c = 1");
    const FieldElement zero = FieldElement::zero(r->field());
    for (std::size_t k = 0; k < d; ++k) {
      Vec left(d * d, zero), right(d * d, zero);
      for (std::size_t i = 0; i < d; ++i) {
        left[i * d + k] = r->unit()[i];
        right[k * d + i] = r->unit()[i];
      }
      ck.require(t->multiply(c, right) == t->multiply(left, c),
                 "c (" + r->labels()[k] + " (x) 1) = (1 (x) " + r->labels()[k] + ") c");
    }
    return;
  }
  ck.require(!verify_central_simple(*r), "R is not central simple");
  const json& cd = field(cert, "center_dimension", "");
  if (!cd.is_number_unsigned()) throw InputError("/center_dimension: expected an integer");
  ck.require(center_basis(*r).size() == cd.get<std::size_t>(),
             "center dimension is " + std::to_string(cd.get<std::size_t>()));
  if (cert.contains("ideal_witness")) {
    const json& iw = cert["ideal_witness"];
    if (!iw.is_array()) throw InputError("/ideal_witness: expected an array");
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < iw.size(); ++i)
      basis.push_back(io::vec_from_json(r->field(), d, iw[i], "/ideal_witness/" + std::to_string(i)));
    const std::size_t dim = Subspace(r->field(), d, basis).dimension();
    ck.require(dim > 0 && dim < d && is_two_sided_ideal(*r, basis), "ideal witness is a proper nonzero two-sided ideal");
  }
}

}  // namespace

std::optional<Poly> squarefree_square_root(const Poly& h) {
  if (h.is_zero() || h.nvars() != 1) return std::nullopt;
  const Poly m = h.monic();
  if (m.degree() == 0) return m;
  if (!is_square_free_factorable(m)) return monic_sqrt(m);
  const auto parts = yun(m);
  Poly root = Poly::constant(h.field(), 1, 1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::size_t mult = i + 1;
    if (mult % 2 == 1 && parts[i].degree() > 0) return std::nullopt;
    for (std::size_t e = 0; e < mult / 2; ++e) root = root * parts[i];
  }
  return root.monic();
}

RecheckReport recheck(const io::Problem& problem, const json& cert) {
  RecheckReport report;
  Checker ck;
  try {
    if (!cert.is_object()) throw InputError("/: certificate must be a JSON object");
    const std::string schema = text(cert, "schema", "");
    if (schema != io::kCertificateSchema) throw InputError("/schema: unsupported certificate schema \"" + schema + "\"");
    const std::string task = text(cert, "task", "");
    if (problem.task == io::Task::validate) throw InputError("validate problems have no certificate to recheck");
    ck.require(task == io::task_name(problem.task), "certificate task matches the problem task " + task);
    ck.require(text(cert, "problem_digest", "") == io::problem_digest(problem),
               "problem digest matches (certificate issued for this problem)");
    const json& tr = field(cert, "transcript", "");
    if (!tr.is_array()) throw InputError("/transcript: expected an array");
    std::vector<std::string> lines;
    for (const auto& l : tr) {
      if (!l.is_string()) throw InputError("/transcript: expected strings");
      lines.push_back(l.get<std::string>());
    }
    ck.require(text(cert, "transcript_digest", "") == io::transcript_digest(io::problem_digest(problem), lines),
               "transcript digest matches");
    switch (problem.task) {
      case io::Task::solve:
        check_solve(ck, problem, cert);
        break;
      case io::Task::decompose_aut:
        check_aut(ck, problem, cert);
        break;
      case io::Task::derivation:
        check_derivation(ck, problem, cert);
        break;
      case io::Task::flip_check:
        check_flip(ck, problem, cert);
        break;
      case io::Task::validate:
        break;
    }
    report.ok = true;
  } catch (const CheckFailed& e) {
    report.ok = false;
    report.failure = e.what();
  }
  report.checks = std::move(ck.checks);
  return report;
}

}  // namespace snforge
