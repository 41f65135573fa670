#include "groverian/evolution.hpp"

#include <cmath>
#include <string>

#include "groverian/entropy.hpp"
#include "groverian/grover.hpp"

namespace groverian {

namespace {

TraceRecord make_record(std::string label, const QuditRegisterState& state,
                        std::size_t marked, const OptimizerConfig& optimizer,
                        bool check_real_mode, bool& converged) {
    OptimizerConfig full = optimizer;
    full.real_only = false;
    const EntanglementReport report = pmax_numeric(state, full);
    converged = report.converged;

    if (check_real_mode && state.is_real(1e-9)) {
        OptimizerConfig real_cfg = optimizer;
        real_cfg.real_only = true;
        const EntanglementReport real_report = pmax_numeric(state, real_cfg);
        if (std::abs(report.p_max - real_report.p_max) > 1e-8)
            throw Error("real-mode and full-mode optimizers disagree at " + label +
                        ": " + std::to_string(report.p_max) + " vs " +
                        std::to_string(real_report.p_max));
    }

    TraceRecord rec;
    rec.step_label = std::move(label);
    rec.success_prob = success_probability(state, marked);
    rec.g_groverian = report.g;
    if (state.qudit_count() == 2) rec.s_entropy = von_neumann_entropy(state, 2);
    return rec;
}

EvolutionTrace build_trace(int d, int n, std::size_t marked, int iterations,
                           const OptimizerConfig& optimizer,
                           const std::optional<QuditRegisterState>& start,
                           bool check_real_mode) {
    if (iterations < 0) throw RangeViolation("iteration count must be >= 0");
    QuditRegisterState state = start.value_or(uniform_state(d, n));
    if (state.level_count() != d || state.qudit_count() != n)
        throw DimensionMismatch("start state does not match the register shape");
    if (marked >= state.dim())
        throw IndexOutOfRange("marked index outside the register");
    const QuditRegisterState reference = state;

    EvolutionTrace trace;
    bool converged = true;
    auto push = [&](std::string label, const QuditRegisterState& s) {
        trace.records.push_back(
            make_record(std::move(label), s, marked, optimizer, check_real_mode, converged));
        trace.all_converged = trace.all_converged && converged;
    };
    push("init", state);
    for (int k = 1; k <= iterations; ++k) {
        state = oracle_reflect(state, marked);
        push("iter" + std::to_string(k) + ":PW", state);
        state = diffusion_reflect(state, reference);
        push("iter" + std::to_string(k) + ":Ppsi", state);
    }
    return trace;
}

} // namespace

EvolutionTrace trace_two_qutrit(std::size_t marked, const OptimizerConfig& optimizer) {
    return build_trace(3, 2, marked, 2, optimizer, {}, true);
}

EvolutionTrace trace_general(int d, int n, std::size_t marked, int iterations,
                             const OptimizerConfig& optimizer,
                             const std::optional<QuditRegisterState>& start) {
    return build_trace(d, n, marked, iterations, optimizer, start, false);
}

} // namespace groverian
