#pragma once

#include <optional>
#include <string>
#include <vector>

namespace groverian {

// One observation point along a Grover run. Labels follow the grammar
// "init", "iter<k>:PW" (after the oracle reflection of iteration k) and
// "iter<k>:Ppsi" (after the diffusion reflection). Entanglement fields are
// present only when the producing routine computed them.
struct TraceRecord {
    std::string step_label;
    double success_prob = 0.0;
    std::optional<double> g_groverian;
    std::optional<double> s_entropy;
};

struct EvolutionTrace {
    std::vector<TraceRecord> records;
    // False when any per-record optimizer run hit its sweep cap before the
    // tolerance; stays true for traces that compute no entanglement.
    bool all_converged = true;
};

} // namespace groverian
