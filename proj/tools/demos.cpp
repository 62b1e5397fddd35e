#include <filesystem>
#include <functional>
#include <ostream>

#include "cli.hpp"
#include "snforge/error.hpp"

namespace snforge::cli {

namespace {

const Field kQ = Field::rationals();

// a = sum a_ij e_ij in M_n(F) (x) S, entries row-major.
TensorElement matrix_over(const RingPtr& s, std::size_t n, const std::vector<RingElement>& entries) {
  AlgebraPtr r = matrix_algebra(s->base_field(), n);
  TensorElement a = TensorElement::zero(r, s);
  for (std::size_t i = 0; i < n * n; ++i)
    a = a + TensorElement::pure(r, s, r->basis_vector(i), entries[i]);
  return a;
}

TensorElement matrix_over(const RingPtr& s, std::size_t n, const std::vector<std::string>& entries) {
  std::vector<RingElement> e;
  for (const auto& t : entries) e.push_back(io::parse_element(s, t));
  return matrix_over(s, n, e);
}

RingElement series_of(const RingPtr& s, const std::vector<long>& coefficients) {
  std::vector<RingElement> c;
  for (std::size_t i = 0; i < s->order(); ++i)
    c.push_back(RingElement::scalar(s->base(), FieldElement(s->base_field(), i < coefficients.size() ? coefficients[i] : 0L)));
  return RingElement::series(s, c);
}

struct Demo {
  std::string name;
  std::string summary;
  std::function<io::Problem(std::ostream&)> build;
  // Extra checks after solving; returns false on failure.
  std::function<bool(const io::Problem&, const Outcome&, const Options&, std::ostream&)> after;
};

io::Problem elliptic(std::ostream& out) {
  RingPtr s = Ring::curve(kQ);
  TensorElement a = matrix_over(s, 2, std::vector<std::string>{"y", "x", "x^2", "y"});
  out << "S = Q[x,y]/(y^2 - x^3 - x), a = [[y, x], [x^2, y]], det(a) = y^2 - x^3 = x\n";
  out << "a is not invertible over S, but every a e_ij a^-1 has entries in S\n";
  HomSpec phi = require_hom(a.r(), s, conjugation_images(a));
  for (std::size_t k = 0; k < phi.images.size(); ++k)
    out << "phi(" << a.r()->labels()[k] << ") = " << phi.images[k].to_string() << "\n";
  return io::solve_problem(phi, a);
}

io::Problem unipotent(std::ostream& out) {
  RingPtr s = Ring::polynomial(kQ, 1);
  TensorElement u1 = matrix_over(s, 2, std::vector<std::string>{"1", "x", "0", "1"});
  TensorElement u2 = matrix_over(s, 2, std::vector<std::string>{"1", "0", "x^2", "1"});
  TensorElement a = u1 * u2;
  out << "S = Q[x], phi = Inn(a) with a = (I + x e12)(I + x^2 e21) = " << a.to_string() << "\n";
  return io::solve_problem(require_hom(a.r(), s, conjugation_images(a)));
}

io::Problem series_lift(std::ostream& out) {
  RingPtr s = Ring::series(Ring::field(kQ), 8);
  AlgebraPtr r = matrix_algebra(kQ, 2);
  RingElement one = series_of(s, {1});
  TensorElement a = matrix_over(s, 2, std::vector<RingElement>{one, series_of(s, {0, 1}), series_of(s, {0, 0, 1}), one});
  out << "S = Q[[t]]/(t^8), phi = Inn(a) with a = I + t e12 + t^2 e21, det(a) = 1 - t^3\n";
  return io::solve_problem(require_hom(r, s, conjugation_images(a)));
}

io::Problem aut_decompose(std::ostream& out) {
  RingPtr s = Ring::polynomial(kQ, 1);
  TensorElement c0 = matrix_over(s, 2, std::vector<std::string>{"1", "x", "0", "1"});
  AutSpec psi = twisted_inner_automorphism(c0, {io::parse_element(s, "x + 1")});
  out << "psi = Inn(I + x e12) o (id (x) sigma) on M_2(Q[x]), sigma(x) = x + 1\n";
  for (std::size_t k = 0; k < psi.forward.unit_images.size(); ++k)
    out << "psi(" << psi.r->labels()[k] << ") = " << psi.forward.unit_images[k].to_string() << "\n";
  out << "psi(x) = " << psi.forward.generator_images[0].to_string() << "\n";
  io::Problem p;
  p.task = io::Task::decompose_aut;
  p.r = psi.r;
  p.s = s;
  p.n = 2;
  p.automorphism = psi.forward;
  p.inverse = psi.inverse;
  return p;
}

io::Problem derivation_m2(std::ostream& out) {
  AlgebraPtr r = matrix_algebra(kQ, 2);
  Bimodule m = regular_bimodule(r);
  DerivationSpec d = inner_derivation(m, r->basis_vector(1));
  out << "d = ad(e12) on M_2(Q) with values in M_2(Q)\n";
  io::Problem p;
  p.task = io::Task::derivation;
  p.r = r;
  p.bimodule = m;
  p.regular_bimodule = true;
  p.values = d.values;
  return p;
}

io::Problem flip_m2(std::ostream& out) {
  out << "flip x (x) 1 -> 1 (x) x on M_2(Q) (x) M_2(Q)\n";
  io::Problem p;
  p.task = io::Task::flip_check;
  p.r = matrix_algebra(kQ, 2);
  return p;
}

bool series_after(const io::Problem& p, const Outcome&, const Options& opts, std::ostream& out) {
  HomSpec phi = require_hom(p.r, p.s, p.images);
  CoherenceResult c = series_coherence(phi, 4, resolve_seed(opts, p), resolve_trials(opts, p));
  out << "N = 8 certificate truncated to N = 4 " << (c.identical ? "is byte-identical to" : "DIFFERS from")
      << " the direct N = 4 certificate\n";
  return c.identical;
}

bool derivation_after(const io::Problem& p, const Outcome& o, const Options&, std::ostream& out) {
  // w - e12 must be central.
  const AlgebraPtr& r = p.r;
  Vec w;
  for (const auto& x : o.certificate.at("w")) w.push_back(FieldElement::parse(r->field(), x.get<std::string>()));
  Vec diff = w;
  diff[1] = diff[1] - FieldElement::one(r->field());
  bool central = true;
  for (std::size_t k = 0; k < r->dimension(); ++k)
    if (r->multiply(diff, r->basis_vector(k)) != r->multiply(r->basis_vector(k), diff)) central = false;
  out << "w - e12 is " << (central ? "central" : "NOT central") << "\n";
  return central;
}

const std::vector<Demo>& registry() {
  static const std::vector<Demo> demos = {
      {"elliptic-counterexample", "M_2 over the curve y^2 = x^3 + x: integral conjugation that is not inner", elliptic,
       nullptr},
      {"unipotent-poly", "inner automorphism of M_2(Q[x]) recovered by the UFD backend", unipotent, nullptr},
      {"series-lift", "conjugator over Q[[t]]/(t^8) lifted from the constant term, with truncation coherence",
       series_lift, series_after},
      {"aut-decompose", "automorphism of M_2(Q[x]) split as Inn(c) o (id (x) sigma)", aut_decompose, nullptr},
      {"derivation-m2", "witness for the inner derivation ad(e12) of M_2(Q)", derivation_m2, derivation_after},
      {"flip-m2", "conjugator for the flip on M_2(Q) (x) M_2(Q)", flip_m2, nullptr},
  };
  return demos;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.push_back(d.name);
    return v;
  }();
  return names;
}

CoherenceResult series_coherence(const HomSpec& phi, std::size_t lower_order, std::uint64_t seed, unsigned trials) {
  if (phi.s->family() != RingFamily::series) throw DomainError("coherence needs a series coefficient ring");
  if (lower_order == 0 || lower_order > phi.s->order()) throw DomainError("lower order out of range");
  RingPtr low = Ring::series(phi.s->base(), lower_order);
  std::vector<TensorElement> images;
  for (const auto& im : phi.images) {
    std::vector<RingElement> coords;
    for (const auto& c : im.coords()) coords.push_back(series_truncate(c, low));
    images.emplace_back(phi.r, low, coords);
  }
  SolveRequest high_req{phi, seed, trials, std::string("series"), std::nullopt};
  SolveRequest low_req{require_hom(phi.r, low, images), seed, trials, std::string("series"), std::nullopt};
  const Certificate high = dispatch(high_req);
  const Certificate direct = dispatch(low_req);
  const std::string digest = io::problem_digest(io::solve_problem(low_req.phi));
  CoherenceResult out;
  out.truncated = io::canonical_dump(io::certificate_to_json(truncate_certificate(high, low), digest));
  out.direct = io::canonical_dump(io::certificate_to_json(direct, digest));
  out.identical = out.truncated == out.direct;
  return out;
}

int cmd_demo(const std::string& name, const Options& opts, std::ostream& out, std::ostream& err) {
  if (name.empty()) {
    for (const auto& d : registry()) out << d.name << "  " << d.summary << "\n";
    return kInner;
  }
  const Demo* demo = nullptr;
  for (const auto& d : registry())
    if (d.name == name) demo = &d;
  if (!demo) {
    err << "unknown demo \"" << name << "\"; available:\n";
    for (const auto& d : registry()) err << "  " << d.name << "\n";
    return kInputError;
  }
  try {
    out << "== " << demo->name << ": " << demo->summary << "\n";
    io::Problem built = demo->build(out);
    // Round-trip through the file format so the files on disk are exactly what was solved.
    const std::string problem_text = io::canonical_dump(io::problem_to_json(built)) + "\n";
    const io::Problem p = io::problem_from_json(io::json::parse(problem_text));
    const Outcome o = run_problem(p, opts);
    for (const auto& line : o.report) out << line << "\n";

    namespace fs = std::filesystem;
    const fs::path dir = opts.output ? fs::path(*opts.output) : fs::current_path();
    fs::create_directories(dir);
    const std::string problem_path = (dir / (demo->name + ".problem.json")).string();
    const std::string cert_path = (dir / (demo->name + ".certificate.json")).string();
    write_atomic(problem_path, problem_text);
    write_atomic(cert_path, io::canonical_dump(o.certificate) + "\n");
    out << "wrote " << problem_path << "\nwrote " << cert_path << "\n";

    const RecheckReport rep = recheck(p, o.certificate);
    if (!rep.ok) {
      err << "recheck failed: " << rep.failure << "\n";
      return kRecheckFailed;
    }
    out << "recheck: " << rep.checks.size() << " checks passed\n";
    if (demo->after && !demo->after(p, o, opts, out)) return kRecheckFailed;
    return o.code;
  } catch (const Error& e) {
    err << "demo failed: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "demo failed: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace snforge::cli
