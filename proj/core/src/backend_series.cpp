#include "backend_util.hpp"
#include "snforge/error.hpp"

namespace snforge {

Certificate solve_power_series(const SolveRequest& req) {
  const HomSpec& phi = req.phi;
  const RingPtr& s = phi.s;
  if (s->family() != RingFamily::series)
    return detail::unsupported(req, "series", "series backend needs a truncated power series ring, got " + s->name());
  const RingPtr& s0 = s->base();
  Certificate cert = detail::start_certificate(req, "series");

  // phi_0: constant terms
  auto constant = [](const RingElement& x) { return x.parts()[0]; };
  SolveRequest base{detail::map_hom(phi, s0, constant), req.seed, req.trials, std::nullopt, std::nullopt};
  if (req.presentation) base.presentation = detail::map_coords(*req.presentation, s0, constant);
  Certificate base_cert = dispatch(base);
  cert.transcript.push_back("constant term over " + s0->name() + ": " + base_cert.backend + " -> " +
                            status_name(base_cert.status));
  if (base_cert.status != Status::Inner) {
    cert.status = base_cert.status;
    cert.message = "constant-term solve: " + base_cert.message;
    cert.parts.push_back(std::move(base_cert));
    return cert;
  }
  auto lift = [&](const RingElement& x) { return RingElement::series(s, {x}); };
  const TensorElement a = detail::map_coords(*base_cert.conjugator, s, lift);
  const TensorElement a_inv = detail::map_coords(*base_cert.inverse, s, lift);
  cert.parts.push_back(std::move(base_cert));

  // psi = a^-1 phi a has constant term the identity
  std::vector<TensorElement> psi_images;
  for (const auto& img : phi.images) psi_images.push_back(a_inv * img * a);
  const HomSpec psi = require_hom(phi.r, s, std::move(psi_images));
  const CoefficientTuple ct = extract_coefficients(psi);

  const std::size_t d = phi.r->dimension();
  std::size_t k = d;
  for (std::size_t i = 0; i < d && k == d; ++i) {
    auto u0 = unit_part(detail::map_coords(ct.c[i], s0, constant));
    if (!u0) continue;
    auto lambda = as_scalar(*u0);
    if (lambda && !lambda->is_zero()) k = i;
  }
  if (k == d) throw InternalError("no coefficient with a nonzero scalar constant term");
  cert.transcript.push_back("coefficient c_" + phi.r->labels()[k] + " has scalar constant term");
  auto ck_inv = tensor_invert(ct.c[k]);
  if (!ck_inv) throw InternalError("coefficient with scalar constant term is not invertible");
  detail::finish_inner(cert, phi, a * ct.c[k]);
  return cert;
}

}  // namespace snforge
