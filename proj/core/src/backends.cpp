#include <random>

#include "backend_util.hpp"
#include "snforge/error.hpp"

namespace snforge {

namespace detail {

Certificate start_certificate(const SolveRequest& req, std::string backend) {
  Certificate cert;
  cert.backend = std::move(backend);
  cert.seed = req.seed;
  cert.trials = req.trials;
  return cert;
}

Certificate unsupported(const SolveRequest& req, std::string backend, std::string message) {
  Certificate cert = start_certificate(req, std::move(backend));
  cert.status = Status::Unsupported;
  cert.message = std::move(message);
  return cert;
}

void finish_inner(Certificate& cert, const HomSpec& phi, const TensorElement& c) {
  ConjugatorCheck check = verify_conjugator(phi, c);
  if (!check.passed) throw InternalError(cert.backend + " backend produced a bad conjugator: " + check.reason);
  cert.status = Status::Inner;
  cert.conjugator = c;
  cert.inverse = std::move(check.inverse);
  for (auto& line : check.transcript) cert.transcript.push_back(std::move(line));
}

TensorElement map_coords(const TensorElement& u, const RingPtr& target,
                         const std::function<RingElement(const RingElement&)>& f) {
  std::vector<RingElement> c;
  for (const auto& x : u.coords()) c.push_back(f(x));
  return TensorElement(u.r(), target, std::move(c));
}

HomSpec map_hom(const HomSpec& phi, const RingPtr& target, const std::function<RingElement(const RingElement&)>& f) {
  std::vector<TensorElement> images;
  for (const auto& img : phi.images) images.push_back(map_coords(img, target, f));
  return require_hom(phi.r, target, std::move(images));
}

RingPtr matrix_findim_view(const RingPtr& s) {
  return Ring::findim(matrix_algebra(s->base_field(), s->matrix_size()));
}

RingElement matrix_to_view(const RingElement& x, const RingPtr& view) {
  Vec coords;
  for (const auto& e : x.parts()) coords.push_back(e.field_value());
  return RingElement::findim(view, std::move(coords));
}

RingElement view_to_matrix(const RingElement& x, const RingPtr& s) {
  std::vector<RingElement> entries;
  for (const auto& v : x.coords()) entries.push_back(RingElement::findim(s->base(), {v}));
  return RingElement::matrix(s, std::move(entries));
}

}  // namespace detail

std::string status_name(Status s) {
  switch (s) {
    case Status::Inner:
      return "Inner";
    case Status::NotInner:
      return "NotInner";
    case Status::Unsupported:
      return "Unsupported";
    case Status::Exhausted:
      return "Exhausted";
  }
  return "?";
}

std::optional<std::string> select_backend(const RingPtr& s, std::string* why) {
  auto no = [&](std::string reason) -> std::optional<std::string> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  switch (s->family()) {
    case RingFamily::product:
      return "product";
    case RingFamily::series:
      return "series";
    case RingFamily::field:
    case RingFamily::findim:
      return "findim";
    case RingFamily::matrix: {
      const RingPtr& base = s->base();
      if (base->family() == RingFamily::field) return "findim";
      if (base->family() == RingFamily::polynomial && base->nvars() == 1) return "pid-matrix";
      if (base->family() == RingFamily::polynomial)
        return no("matrix rings over multivariate polynomial rings need a constructive Quillen-Suslin step, which is "
                  "not implemented");
      return no("no backend for matrix rings over " + base->name());
    }
    case RingFamily::polynomial:
      return "ufd";
    case RingFamily::curve:
      return "curve";
    case RingFamily::free_algebra:
      return no("free algebras (and Sylvester or HCRF domains in general) are outside the supported classes");
  }
  return no("unknown ring family");
}

Certificate dispatch(const SolveRequest& req) {
  std::string name;
  if (req.backend) {
    name = *req.backend;
  } else {
    std::string why;
    auto chosen = select_backend(req.phi.s, &why);
    if (!chosen) return detail::unsupported(req, "none", why);
    name = *chosen;
  }
  if (name == "findim") return solve_findim(req);
  if (name == "ufd") return solve_ufd(req);
  if (name == "pid-matrix") return solve_pid_module(req);
  if (name == "series") return solve_power_series(req);
  if (name == "product") return solve_product(req);
  if (name == "curve") return certify_not_inner_curve(req);
  throw InputError("unknown backend '" + name + "' (expected findim, ufd, pid-matrix, series, product or curve)");
}

std::optional<std::string> field_size_guard(Field f, std::size_t dim) {
  if (f.p != 0 && f.p <= 2 * dim)
    return "field " + f.name() + " is too small for random sampling in dimension " + std::to_string(dim) +
           " (need p > " + std::to_string(2 * dim) + ")";
  return std::nullopt;
}

IntertwinerSearch find_invertible_intertwiner(const StructAlgebra& ambient, const std::vector<Vec>& phi_images,
                                              const std::vector<Vec>& x_images, std::uint64_t seed, unsigned trials,
                                              long bound) {
  const std::size_t dim = ambient.dimension();
  const Field f = ambient.field();
  const FieldElement zero = FieldElement::zero(f);
  FMatrix sys(phi_images.size() * dim, dim, zero);
  for (std::size_t p = 0; p < phi_images.size(); ++p) {
    const FMatrix l = ambient.left_matrix(phi_images[p]);
    const FMatrix r = ambient.right_matrix(x_images[p]);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) sys(p * dim + i, j) = l(i, j) - r(i, j);
  }
  const auto basis = kernel(sys, zero);
  IntertwinerSearch out;
  out.kernel_dimension = basis.size();
  if (basis.empty()) return out;
  std::mt19937_64 rng(seed);
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  for (unsigned t = 1; t <= trials; ++t) {
    Vec c(dim, zero);
    for (const auto& v : basis) {
      const long lambda = static_cast<long>(rng() % width) - bound;
      if (lambda == 0) continue;
      const FieldElement l(f, lambda);
      for (std::size_t i = 0; i < dim; ++i)
        if (!v[i].is_zero()) c[i] += l * v[i];
    }
    out.trials_used = t;
    auto x = solve_vector(ambient.left_matrix(c), ambient.unit(), zero);
    if (!x) continue;
    if (ambient.multiply(*x, c) != ambient.unit()) continue;
    out.c = std::move(c);
    out.c_inverse = std::move(x);
    return out;
  }
  return out;
}

Certificate solve_product(const SolveRequest& req) {
  const HomSpec& phi = req.phi;
  if (phi.s->family() != RingFamily::product)
    return detail::unsupported(req, "product", "product backend needs S = S1 x S2, got " + phi.s->name());
  Certificate cert = detail::start_certificate(req, "product");
  std::vector<TensorElement> factor_c;
  for (std::size_t i = 0; i < 2; ++i) {
    const RingPtr si = phi.s->factor(i);
    auto project = [i](const RingElement& x) { return x.parts()[i]; };
    SolveRequest sub{detail::map_hom(phi, si, project), req.seed, req.trials, std::nullopt, std::nullopt};
    if (req.presentation) sub.presentation = detail::map_coords(*req.presentation, si, project);
    Certificate part = dispatch(sub);
    cert.transcript.push_back("factor " + std::to_string(i + 1) + " (" + si->name() + "): " + part.backend + " -> " +
                              status_name(part.status));
    const Status st = part.status;
    const std::string msg = part.message;
    if (part.conjugator) factor_c.push_back(*part.conjugator);
    cert.parts.push_back(std::move(part));
    if (st != Status::Inner) {
      cert.status = st;
      cert.message = "factor " + std::to_string(i + 1) + ": " + msg;
      return cert;
    }
  }
  std::vector<RingElement> coords;
  for (std::size_t k = 0; k < phi.r->dimension(); ++k)
    coords.push_back(RingElement::product(phi.s, factor_c[0].coord(k), factor_c[1].coord(k)));
  detail::finish_inner(cert, phi, TensorElement(phi.r, phi.s, std::move(coords)));
  return cert;
}

Certificate truncate_certificate(const Certificate& cert, const RingPtr& target) {
  Certificate out = cert;
  auto trunc = [&](const RingElement& x) { return series_truncate(x, target); };
  if (cert.conjugator) out.conjugator = detail::map_coords(*cert.conjugator, target, trunc);
  if (cert.inverse) out.inverse = detail::map_coords(*cert.inverse, target, trunc);
  if (cert.coefficients) {
    CoefficientTuple ct;
    for (const auto& c : cert.coefficients->c) ct.c.push_back(detail::map_coords(c, target, trunc));
    for (const auto& row : cert.coefficients->s) {
      ct.s.emplace_back();
      for (const auto& x : row) ct.s.back().push_back(trunc(x));
    }
    out.coefficients = std::move(ct);
  }
  return out;
}

}  // namespace snforge
