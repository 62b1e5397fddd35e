#pragma once

#include <string>
#include <vector>

#include "snforge/serialize.hpp"

namespace snforge {

struct RecheckReport {
  bool ok = false;
  /// First failing check, when !ok.
  std::string failure;
  std::vector<std::string> checks;
};

/// Re-verifies every claim of a certificate against its problem without
/// solving anything: digests, conjugation identities, two-sided inverses,
/// the per-backend data, and for curve refutations each branch through an
/// independent square test. Malformed certificates throw InputError.
RecheckReport recheck(const io::Problem& problem, const io::json& certificate);

/// c with h = lc(h) c^2 and c monic, decided through the squarefree
/// decomposition of h (Yun). Nullopt when h is zero or not of that form.
std::optional<Poly> squarefree_square_root(const Poly& h);

}  // namespace snforge
