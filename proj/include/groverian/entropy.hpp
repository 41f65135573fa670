#pragma once

// Bipartite entanglement diagnostics used alongside the Groverian measure.

#include <optional>
#include <vector>

#include "groverian/state.hpp"

namespace groverian {

// Squared Schmidt coefficients of a two-qudit state, descending; they sum
// to 1 and are the eigenvalues of either single-site reduced density
// matrix. Requires n == 2 (NotBipartite).
std::vector<double> schmidt_coefficients(const QuditRegisterState& psi);

// Von Neumann entropy S = -Tr[rho log rho] of the site that remains after
// tracing out `traced_out` (1 or 2) from a two-qudit state. The logarithm
// base defaults to d, so S ranges over [0, 1]; eigenvalues below 1e-12 are
// clipped to 0, so S is finite (never NaN) on rank-deficient states.
double von_neumann_entropy(const QuditRegisterState& psi, int traced_out,
                           std::optional<double> log_base = {});

} // namespace groverian
