#include "groverian/grover.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace groverian {

namespace {

void check_marked(const QuditRegisterState& psi, std::size_t marked) {
    if (marked >= psi.dim())
        throw IndexOutOfRange("marked index " + std::to_string(marked) +
                              " outside 0.." + std::to_string(psi.dim() - 1));
}

} // namespace

QuditRegisterState oracle_reflect(const QuditRegisterState& psi, std::size_t marked) {
    check_marked(psi, marked);
    std::vector<Complex> amps = psi.amplitudes();
    amps[marked] = -amps[marked];
    return QuditRegisterState(psi.level_count(), psi.qudit_count(), std::move(amps));
}

QuditRegisterState diffusion_reflect(const QuditRegisterState& psi,
                                     const QuditRegisterState& reference) {
    const Complex overlap = inner_product(reference, psi);
    std::vector<Complex> amps(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i)
        amps[i] = 2.0 * overlap * reference[i] - psi[i];
    return QuditRegisterState(psi.level_count(), psi.qudit_count(), std::move(amps));
}

QuditRegisterState grover_iterate(const QuditRegisterState& psi,
                                  const GroverConfig& config,
                                  const QuditRegisterState& reference) {
    check_marked(psi, config.marked);
    if (config.iterations < 0) throw RangeViolation("iteration count must be >= 0");
    QuditRegisterState state = psi;
    for (int k = 0; k < config.iterations; ++k)
        state = diffusion_reflect(oracle_reflect(state, config.marked), reference);
    return state;
}

double success_probability(const QuditRegisterState& psi, std::size_t marked) {
    check_marked(psi, marked);
    return std::norm(psi[marked]);
}

int optimal_iterations(int d, int n) {
    const std::size_t dim = register_dim(d, n);
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(dim)));
    const int hi = static_cast<int>(std::ceil(std::numbers::pi / (2.0 * theta)));
    int best_m = 0;
    double best = 0.0;
    for (int m = 0; m <= hi; ++m) {
        const double s = std::sin((2.0 * m + 1.0) * theta);
        // tolerance keeps exact ties (e.g. d^n = 2) from resolving by
        // floating-point noise toward the larger m
        if (s * s > best + 1e-12) {
            best = s * s;
            best_m = m;
        }
    }
    return best_m;
}

EvolutionTrace run_search(int d, int n, const GroverConfig& config) {
    if (config.iterations < 0) throw RangeViolation("iteration count must be >= 0");
    QuditRegisterState state = uniform_state(d, n);
    check_marked(state, config.marked);
    const QuditRegisterState reference = state;

    EvolutionTrace trace;
    trace.records.push_back({"init", success_probability(state, config.marked), {}, {}});
    for (int k = 1; k <= config.iterations; ++k) {
        state = oracle_reflect(state, config.marked);
        if (config.record_half_steps)
            trace.records.push_back({"iter" + std::to_string(k) + ":PW",
                                     success_probability(state, config.marked), {}, {}});
        state = diffusion_reflect(state, reference);
        trace.records.push_back({"iter" + std::to_string(k) + ":Ppsi",
                                 success_probability(state, config.marked), {}, {}});
    }
    return trace;
}

} // namespace groverian
