#include "backend_util.hpp"
#include "snforge/error.hpp"

namespace snforge {

namespace {

// p with p^2 = h / lc(h), or nullopt.
std::optional<Poly> square_root_monic_part(const Poly& h) {
  if (h.is_zero()) return std::nullopt;
  return monic_sqrt(h.monic());
}

std::string show(const Poly& p) { return p.to_string(); }

// delta = P (a constant multiple of a square in F[x] times 1, or times y^2 = g).
void analyze_split(const Poly& big_p, const Poly& g, const RingPtr& s, CurveAnalysis& out) {
  {
    CurveBranch br{"p = 0", "gamma q^2 (" + show(g) + ") = " + show(big_p), Poly(big_p.field(), 1), true, ""};
    if (big_p.degree() < g.degree()) {
      br.reason = "degree " + std::to_string(big_p.degree()) + " of det(a) is below degree " +
                  std::to_string(g.degree()) + " of g";
    } else if (auto h = divide_exact(big_p, g); !h) {
      br.reason = "g does not divide det(a)";
    } else {
      br.tested = *h;
      if (h->degree() % 2 != 0) {
        br.reason = "det(a) / g = " + show(*h) + " has odd degree, so it is not a constant times a square";
      } else if (auto q = square_root_monic_part(*h); !q) {
        br.reason = "monic part of det(a) / g is not a square";
      } else {
        br.refuted = false;
        br.reason = "det(a) = gamma (q y)^2";
        if (!out.f) {
          out.gamma = h->leading_coefficient();
          out.f = RingElement::curve(s, Poly(big_p.field(), 1), *q);
        }
      }
    }
    out.branches.push_back(std::move(br));
  }
  {
    CurveBranch br{"q = 0", "gamma p^2 = " + show(big_p), big_p, true, ""};
    if (big_p.degree() % 2 != 0) {
      br.reason = "det(a) has odd degree " + std::to_string(big_p.degree()) + ", so it is not a constant times a square";
    } else if (auto p = square_root_monic_part(big_p); !p) {
      br.reason = "monic part of det(a) is not a square";
    } else {
      br.refuted = false;
      br.reason = "det(a) = gamma p^2";
      if (!out.f) {
        out.gamma = big_p.leading_coefficient();
        out.f = RingElement::from_poly(s, *p);
      }
    }
    out.branches.push_back(std::move(br));
  }
}

void analyze_mixed(const Poly& big_p, const Poly& big_q, const Poly& g, const RingPtr& s, CurveAnalysis& out) {
  const Field f = big_p.field();
  const Poly norm = big_p * big_p - big_q * big_q * g;
  std::optional<Poly> root;
  if (auto lc_root = norm.leading_coefficient().sqrt())
    if (auto m = monic_sqrt(norm.monic())) root = m->scaled(*lc_root);
  if (!root) {
    out.branches.push_back({"p q != 0", "(gamma N(f))^2 = " + show(norm), norm, true,
                            "the norm P^2 - Q^2 g of det(a) is not a square in F[x]"});
    return;
  }
  const FieldElement half = FieldElement(f, 2L).inverse();
  for (int sign : {1, -1}) {
    const Poly sroot = sign > 0 ? *root : -*root;
    CurveBranch br{sign > 0 ? "p q != 0, sign +" : "p q != 0, sign -",
                   "gamma p^2 = (P + s)/2 and gamma q^2 g = (P - s)/2", Poly(f, 1), true, ""};
    const Poly a_part = (big_p + sroot).scaled(half);
    const Poly b_part = (big_p - sroot).scaled(half);
    br.tested = a_part;
    std::optional<Poly> p, q;
    FieldElement gamma;
    if (a_part.is_zero() || b_part.is_zero()) {
      br.reason = "one of (P +- s)/2 vanishes, forcing p q = 0";
    } else if (gamma = a_part.leading_coefficient(), p = square_root_monic_part(a_part); !p) {
      br.reason = "monic part of (P + s)/2 is not a square";
    } else if (auto h = divide_exact(b_part, g); !h) {
      br.reason = "g does not divide (P - s)/2";
    } else {
      const Poly hq = h->scaled(gamma.inverse());
      auto mu_root = hq.leading_coefficient().sqrt();
      auto qm = square_root_monic_part(hq);
      if (!mu_root || !qm) {
        br.tested = hq;
        br.reason = "(P - s)/(2 gamma g) is not a square in F[x]";
      } else {
        q = qm->scaled(*mu_root);
        const Poly two_gamma_pq = (*p * *q).scaled(gamma * FieldElement(f, 2L));
        if (two_gamma_pq == -big_q) q = -*q;
        if ((*p * *q).scaled(gamma * FieldElement(f, 2L)) != big_q) {
          br.reason = "2 gamma p q does not match the y-part of det(a)";
        } else {
          br.refuted = false;
          br.reason = "det(a) = gamma (p + q y)^2";
          if (!out.f) {
            out.gamma = gamma;
            out.f = RingElement::curve(s, *p, *q);
          }
        }
      }
    }
    out.branches.push_back(std::move(br));
  }
}

}  // namespace

CurveAnalysis analyze_curve_conjugator(const TensorElement& a) {
  const RingPtr& s = a.s();
  if (s->family() != RingFamily::curve) throw DomainError("curve analysis needs the curve ring");
  if (!a.r()->same_as(*matrix_algebra(s->base_field(), 2))) throw DomainError("curve analysis needs R = M_2(F)");
  CurveAnalysis out;
  out.delta = curve_mul(a.coord(0), a.coord(3)) - curve_mul(a.coord(1), a.coord(2));
  if (out.delta.is_zero()) throw DomainError("det(a) = 0; a is not invertible over the fraction field");
  const auto& dc = out.delta.curve_coords();
  const Poly& g = s->curve_g();
  if (dc.b.is_zero())
    analyze_split(dc.a, g, s, out);
  else
    analyze_mixed(dc.a, dc.b, g, s, out);
  if (out.f) {
    const RingElement gf2 = scale(*out.gamma, curve_mul(*out.f, *out.f));
    if (gf2 != out.delta) throw InternalError("square decomposition of det(a) does not multiply back");
    for (std::size_t i = 0; i < 4; ++i)
      if (!curve_divide(a.coord(i), *out.f)) {
        out.nondivisible_entry = i;
        break;
      }
  }
  return out;
}

Certificate certify_not_inner_curve(const SolveRequest& req) {
  const HomSpec& phi = req.phi;
  const RingPtr& s = phi.s;
  if (s->family() != RingFamily::curve)
    return detail::unsupported(req, "curve", "curve certifier needs S = F[x,y]/(y^2 - g), got " + s->name());
  if (!phi.r->same_as(*matrix_algebra(s->base_field(), 2)))
    return detail::unsupported(req, "curve", "curve certifier needs R = M_2(F) in the matrix-unit basis");
  if (!req.presentation)
    return detail::unsupported(req, "curve",
                               "curve certifier needs phi presented as conjugation by some a in M_2(S) (field "
                               "\"conjugator\" in the problem)");
  const TensorElement& a = *req.presentation;
  if (conjugation_images(a) != phi.images) throw DomainError("the given conjugator a does not produce the given images");

  Certificate cert = detail::start_certificate(req, "curve");
  CurveAnalysis an = analyze_curve_conjugator(a);
  cert.transcript.push_back("det(a) = " + an.delta.to_string());
  for (const auto& br : an.branches)
    cert.transcript.push_back("branch " + br.name + ": " + (br.refuted ? "refuted, " : "solvable, ") + br.reason);
  if (!an.f) {
    cert.status = Status::NotInner;
    cert.message = "det(a) = " + an.delta.to_string() +
                   " is not gamma f^2 for any gamma in F^x and f in S, so no invertible c in M_2(S) conjugates like a";
    cert.curve = std::move(an);
    return cert;
  }
  if (an.nondivisible_entry) {
    cert.status = Status::NotInner;
    cert.message = "det(a) = gamma f^2 with f = " + an.f->to_string() + ", but f does not divide entry " +
                   phi.r->labels()[*an.nondivisible_entry] + " of a";
    cert.curve = std::move(an);
    return cert;
  }
  std::vector<RingElement> coords;
  for (std::size_t i = 0; i < 4; ++i) coords.push_back(*curve_divide(a.coord(i), *an.f));
  cert.transcript.push_back("c = a / f with f = " + an.f->to_string());
  cert.curve = std::move(an);
  detail::finish_inner(cert, phi, TensorElement(phi.r, s, std::move(coords)));
  return cert;
}

}  // namespace snforge
