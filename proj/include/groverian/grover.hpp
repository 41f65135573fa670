#pragma once

// Grover search on an n-qudit register, expressed as two reflections:
//
//     P_W   = 1 - 2|W><W|          (oracle: flips the marked amplitude)
//     P_psi = 2|psi><psi| - 1      (diffusion about a reference state)
//
// One iteration is P_psi P_W. Both operators act as rank-1 updates on the
// amplitude vector; no d^n x d^n matrix is ever materialized. The pair acts
// nontrivially only on span{|W>, |reference>}; the orthogonal complement
// picks up at most a sign per iteration.
//
// P_psi with the uniform reference coincides with the classic inversion
// about the mean amplitude; for any other reference the two differ, and the
// reflection form used here is the one that generalizes.

#include <cstddef>

#include "groverian/state.hpp"
#include "groverian/trace.hpp"

namespace groverian {

struct GroverConfig {
    std::size_t marked = 0;       // flat index of |W>
    int iterations = 0;           // full P_psi P_W applications
    bool record_half_steps = true; // trace after each reflection, not only each iteration
};

// P_W |psi>: negates the marked amplitude.
QuditRegisterState oracle_reflect(const QuditRegisterState& psi, std::size_t marked);

// P_ref |psi> = 2 <ref|psi> |ref> - |psi>.
QuditRegisterState diffusion_reflect(const QuditRegisterState& psi,
                                     const QuditRegisterState& reference);

// `iterations` applications of P_reference P_W.
QuditRegisterState grover_iterate(const QuditRegisterState& psi,
                                  const GroverConfig& config,
                                  const QuditRegisterState& reference);

// |<W|psi>|^2.
double success_probability(const QuditRegisterState& psi, std::size_t marked);

// The iteration count m >= 0 maximizing sin^2((2m+1) theta) with
// theta = asin(1/sqrt(d^n)), scanned up to the principal peak
// ceil(pi / (2 theta)); ties break toward smaller m.
int optimal_iterations(int d, int n);

// Runs the search from the uniform state with the uniform reference and
// records success probabilities only (labels "init", "iter<k>:PW",
// "iter<k>:Ppsi"; with record_half_steps off, only full iterations).
EvolutionTrace run_search(int d, int n, const GroverConfig& config);

} // namespace groverian
