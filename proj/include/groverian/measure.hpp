#pragma once

// The Groverian entanglement measure
//
//     G(psi) = sqrt(1 - P_max),
//     P_max  = max over product states |<e1 ... en|psi>|^2,
//
// with four routes to P_max:
//
//   numeric    alternating single-site optimization over the angle
//              parameterization, multi-start (the reference implementation)
//   closed     a closed-form expression for real two-qutrit coefficient
//              matrices; exact on aligned families but NOT valid for
//              arbitrary real states -- see docs/closed-form-validity.md
//   schmidt    largest squared singular value across a bipartite cut;
//              equals P_max when n = 2 (independent oracle)
//   grid       exhaustive angle scan; a lower bound within O(1/resolution)
//
// The numeric route is deterministic for a fixed seed, independent of the
// thread count: restart r uses sub-seed seed + r and results reduce in
// restart order.

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "groverian/product.hpp"
#include "groverian/state.hpp"

namespace groverian {

enum class PmaxMethod { numeric, closed_form_2qutrit, schmidt, grid };

const char* to_string(PmaxMethod method);

struct OptimizerConfig {
    int restarts = 64;
    int max_sweeps = 500;
    double tolerance = 1e-10; // sweep terminates when a full sweep improves P by less
    std::uint64_t seed = 0;
    bool real_only = false; // restrict factors to real vectors (signed alphas, no phases)
    int threads = 1;        // restart-level parallelism; never affects results
};

struct EntanglementReport {
    double p_max = 0.0;
    double g = 0.0;
    PmaxMethod method = PmaxMethod::numeric;
    bool converged = false; // best restart hit the tolerance before the sweep cap
    std::optional<QuditProductAngles> best_angles;
    int restarts_used = 0;
};

// G from a probability; values in [1, 1 + 1e-9] round down to 1, anything
// else outside [0, 1] throws OutOfRange.
double groverian(double p_max);

// Alternating single-site ascent from `restarts` random starts. Each sweep
// replaces every factor by its normalized environment vector (its exact
// single-site optimum), so P is non-decreasing sweep over sweep; after the
// tolerance triggers, a short polish phase runs the improvement down to
// machine precision so gradients vanish at the reported optimum.
EntanglementReport pmax_numeric(const QuditRegisterState& psi,
                                const OptimizerConfig& config = {});

// Closed-form expression for a real 3x3 coefficient matrix a (unit
// Frobenius norm):
//
//     A = hypot(a11 - a22, a21 + a12)      B = hypot(a11 + a22, a21 - a12)
//     C = hypot(a13, a23)                  D = hypot(a31, a32)
//     P = 1/4 [ hypot(a33 - (A+B)/2, C + D) + hypot(a33 + (A+B)/2, C - D) ]^2
//
// Exact on states with vanishing third-row/third-column coupling (C = D = 0)
// but an over-estimate in general; kept as written, unpatched, so the
// numeric and Schmidt routes can adjudicate it.
// See docs/closed-form-validity.md.
double pmax_closed_form_two_qutrit_real(const Eigen::Matrix3d& a);

// Convenience overload: reshapes a real two-qutrit state (d=3, n=2).
double pmax_closed_form_two_qutrit_real(const QuditRegisterState& psi);

// Largest squared singular value of the d^cut x d^(n-cut) reshape;
// cut in 1..n-1. For n = 2 this is P_max exactly.
double pmax_schmidt_bipartite(const QuditRegisterState& psi, int cut);

// Exhaustive scan over per-site angle grids with `resolution` points per
// angle; real mode drops the phases (default: real mode iff the state is
// numerically real). Throws BudgetExceeded when the grid would exceed
// `budget` overlap evaluations.
double pmax_grid(const QuditRegisterState& psi, int resolution,
                 std::optional<bool> real_mode = {},
                 double budget = 1e8);

} // namespace groverian
