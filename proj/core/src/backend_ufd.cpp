#include "backend_util.hpp"
#include "snforge/error.hpp"

namespace snforge {

Certificate solve_ufd(const SolveRequest& req) {
  const HomSpec& phi = req.phi;
  const RingPtr& s = phi.s;
  if (s->family() != RingFamily::polynomial)
    return detail::unsupported(req, "ufd", "ufd backend needs a polynomial ring, got " + s->name());
  Certificate cert = detail::start_certificate(req, "ufd");

  const CoefficientTuple ct = extract_coefficients(phi);
  const std::size_t d = phi.r->dimension();
  std::size_t k = 0;
  while (k < d && ct.c[k].is_zero()) ++k;
  if (k == d) throw InternalError("all extracted coefficients vanish");
  const auto& labels = phi.r->labels();
  cert.transcript.push_back("first nonzero coefficient: c_" + labels[k]);

  RingElement g = RingElement::zero(s);
  std::size_t l = d;
  for (std::size_t i = 0; i < d; ++i) {
    if (ct.s[k][i].is_zero()) continue;
    if (l == d) l = i;
    g = ring_gcd(g, ct.s[k][i]);
  }
  cert.transcript.push_back("gcd of coordinates: " + g.to_string());
  std::vector<RingElement> coords;
  for (std::size_t i = 0; i < d; ++i) {
    auto q = ring_divide(ct.s[k][i], g);
    if (!q) throw InternalError("gcd does not divide a coordinate");
    coords.push_back(std::move(*q));
  }
  const TensorElement c(phi.r, s, std::move(coords));

  // b c_k = 1 (x) s_kl for the first coordinate l with s_kl != 0
  witness(phi, ct, k, l);
  cert.transcript.push_back("witness b c_" + labels[k] + " = 1 (x) s(" + labels[k] + ", " + labels[l] + "): ok");

  if (!tensor_invert(c))
    throw InternalError("normalized coefficient is not invertible; S does not behave like a UFD");
  detail::finish_inner(cert, phi, c);
  return cert;
}

}  // namespace snforge
