#include "backend_util.hpp"
#include "snforge/error.hpp"

namespace snforge {

Certificate solve_findim(const SolveRequest& req) {
  const HomSpec& phi = req.phi;
  const RingPtr& s = phi.s;
  const bool matrix_over_field = s->family() == RingFamily::matrix && s->base()->family() == RingFamily::field;
  if (s->family() != RingFamily::field && s->family() != RingFamily::findim && !matrix_over_field)
    return detail::unsupported(req, "findim", "findim backend needs a finite-dimensional S, got " + s->name());

  // Work with M_n(F) through its matrix-unit structure constants.
  const RingPtr view = matrix_over_field ? detail::matrix_findim_view(s) : s;
  const HomSpec work =
      matrix_over_field ? detail::map_hom(phi, view, [&](const RingElement& x) { return detail::matrix_to_view(x, view); })
                        : phi;

  const AlgebraPtr ambient = tensor_ambient(work.r, view);
  const std::size_t dim = ambient->dimension();
  if (auto why = field_size_guard(s->base_field(), dim)) return detail::unsupported(req, "findim", *why);

  std::vector<Vec> phi_images, x_images;
  for (std::size_t p = 0; p < work.r->dimension(); ++p) {
    phi_images.push_back(tensor_flatten(work.images[p]));
    x_images.push_back(tensor_flatten(TensorElement::basis(work.r, view, p)));
  }
  const long bound = static_cast<long>(2 * dim);
  IntertwinerSearch search = find_invertible_intertwiner(*ambient, phi_images, x_images, req.seed, req.trials, bound);

  Certificate cert = detail::start_certificate(req, "findim");
  cert.trials_used = search.trials_used;
  cert.transcript.push_back("intertwiner space dimension " + std::to_string(search.kernel_dimension) + " over " +
                            s->base_field().name());
  if (!search.c) {
    cert.status = Status::Exhausted;
    cert.message = "no invertible intertwiner in " + std::to_string(req.trials) +
                   " trials (coefficients in [-" + std::to_string(bound) + ", " + std::to_string(bound) + "])";
    return cert;
  }
  cert.transcript.push_back("invertible combination found at trial " + std::to_string(search.trials_used));
  TensorElement c = tensor_unflatten(work.r, view, *search.c);
  if (matrix_over_field) c = detail::map_coords(c, s, [&](const RingElement& x) { return detail::view_to_matrix(x, s); });
  detail::finish_inner(cert, phi, c);
  return cert;
}

}  // namespace snforge
