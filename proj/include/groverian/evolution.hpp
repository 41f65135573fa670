#pragma once

// Entanglement evolution along a Grover run: after every reflection the
// tracker records the success probability, the Groverian measure g (via the
// numeric optimizer, full mode), and, for two-qudit registers, the von
// Neumann entropy s of one site in base-d logarithms.

#include <cstddef>
#include <optional>

#include "groverian/measure.hpp"
#include "groverian/state.hpp"
#include "groverian/trace.hpp"

namespace groverian {

// The reference two-qutrit run (d=3, n=2, two iterations) from the uniform
// start: five records (init plus two reflections per iteration), each with
// g and s. On these real intermediate states the optimizer is also run in
// real mode and the two answers must agree within 1e-8 (Error otherwise).
EvolutionTrace trace_two_qutrit(std::size_t marked,
                                const OptimizerConfig& optimizer = {});

// Grover run for any register shape, with g at every record and s when
// n == 2. `start` defaults to the uniform state; the diffusion reflection
// always reflects about the start, so a poorly aligned start degrades the
// success curve, which is the point of allowing one.
EvolutionTrace trace_general(int d, int n, std::size_t marked, int iterations,
                             const OptimizerConfig& optimizer = {},
                             const std::optional<QuditRegisterState>& start = {});

} // namespace groverian
