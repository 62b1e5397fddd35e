#pragma once

#include <functional>

#include "snforge/backends.hpp"

namespace snforge::detail {

Certificate start_certificate(const SolveRequest& req, std::string backend);
Certificate unsupported(const SolveRequest& req, std::string backend, std::string message);

/// Runs verify_conjugator and records c, c^-1 and the checks. A failed check
/// here is a bug in the backend, so it throws InternalError.
void finish_inner(Certificate& cert, const HomSpec& phi, const TensorElement& c);

/// Applies f to every S-coordinate.
TensorElement map_coords(const TensorElement& u, const RingPtr& target,
                         const std::function<RingElement(const RingElement&)>& f);
/// The same homomorphism with every image coordinate mapped through f.
HomSpec map_hom(const HomSpec& phi, const RingPtr& target, const std::function<RingElement(const RingElement&)>& f);

/// M_n(F) viewed as the finite-dimensional algebra with the matrix-unit basis.
RingPtr matrix_findim_view(const RingPtr& s);
RingElement matrix_to_view(const RingElement& x, const RingPtr& view);
RingElement view_to_matrix(const RingElement& x, const RingPtr& s);

}  // namespace snforge::detail
