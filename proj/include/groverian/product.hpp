#pragma once

// Parameterization of n-fold product states |e1> (x) ... (x) |en>.
//
// Each qutrit factor is
//
//     |e> = e^{i chi} sin(theta) cos(gamma) |1>
//         + e^{i chi'} sin(theta) sin(gamma) |2>
//         + cos(theta) |3>,
//
// and the d-level generalization is a hyperspherical ladder with d-1 polar
// angles alpha_1..alpha_{d-1} and d-1 phases chi_1..chi_{d-1}:
//
//     c_d = cos(alpha_1)
//     c_m = e^{i chi_m} sin(alpha_1) sin(alpha_m) prod_{k=2}^{m-1} cos(alpha_k),  m = 2..d-1
//     c_1 = e^{i chi_1} sin(alpha_1) prod_{k=2}^{d-1} cos(alpha_k)
//
// which is normalized for every angle assignment (the tail telescopes) and
// reduces to the qutrit form at d = 3 via alpha_1 = theta, alpha_2 = gamma,
// chi_1 = chi, chi_2 = chi'. See docs/parameterization.md for worked tables.
//
// Canonical ranges are alpha in [0, pi/2] with free phases, or, in real
// mode, alpha in [-pi/2, pi/2] with all phases zero; the doubled range
// carries the sign freedom and reaches every real product state up to a
// global sign. Builders accept any finite angles (the map is periodic);
// non-finite angles throw RangeViolation.

#include <cstddef>
#include <span>
#include <vector>

#include "groverian/state.hpp"

namespace groverian {

struct QutritFactorAngles {
    double theta = 0.0;
    double gamma = 0.0;
    double chi = 0.0;
    double chi_prime = 0.0;
};

struct QutritProductAngles {
    std::vector<QutritFactorAngles> sites;
};

// One d-level factor: alpha and chi each hold d-1 entries.
struct QuditFactorAngles {
    std::vector<double> alpha;
    std::vector<double> chi;
};

struct QuditProductAngles {
    std::vector<QuditFactorAngles> sites;
};

// Level count implied by the angle counts; validates consistency across
// sites (DimensionMismatch) and finiteness (RangeViolation).
int level_count(const QuditProductAngles& angles);

QuditFactorAngles to_qudit_angles(const QutritFactorAngles& f);
QuditProductAngles to_qudit_angles(const QutritProductAngles& angles);

// Amplitudes (c_1 .. c_d) of one factor; unit norm for any angles.
std::vector<Complex> single_qudit_factor(const QuditFactorAngles& f);

// Partial derivative of the factor vector. Parameters are indexed per site
// as [alpha_1 .. alpha_{d-1}, chi_1 .. chi_{d-1}], i.e. param_index < d-1
// differentiates alpha_{param_index+1}, otherwise chi_{param_index-d+2}.
std::vector<Complex> single_qudit_factor_derivative(const QuditFactorAngles& f,
                                                    int param_index);

QuditRegisterState qudit_product_state(const QuditProductAngles& angles);
QuditRegisterState qutrit_product_state(const QutritProductAngles& angles);

// Product state from explicit unit factor vectors (each of length d).
QuditRegisterState product_state_from_factors(
    int d, const std::vector<std::vector<Complex>>& factors);

// Contraction of psi against every factor except `site` (0-based):
//
//     u[a] = sum_{i : i_site = a} psi_i prod_{k != site} conj(f_k[i_k])
//
// so that <e|psi> = sum_a conj(f_site[a]) u[a]. This is the workhorse of
// both the gradient and the alternating optimizer: the optimal factor for
// `site` with the others held fixed is u / |u|.
std::vector<Complex> environment_vector(const QuditRegisterState& psi,
                                        const std::vector<std::vector<Complex>>& factors,
                                        int site);

// P(angles) = |<e(angles)|psi>|^2.
double overlap_probability(const QuditRegisterState& psi,
                           const QuditProductAngles& angles);
double overlap_probability(const QuditRegisterState& psi,
                           const QutritProductAngles& angles);

// Analytic gradient of the overlap probability, laid out site-major with
// each site's parameters ordered as in single_qudit_factor_derivative.
std::vector<double> overlap_gradient(const QuditRegisterState& psi,
                                     const QuditProductAngles& angles);
std::vector<double> overlap_gradient(const QuditRegisterState& psi,
                                     const QutritProductAngles& angles);

// Inverse of single_qudit_factor on unit vectors, canonicalizing the global
// phase (level d made real nonnegative). In real mode the input must be a
// real vector up to sign and the result uses signed alphas with zero
// phases. Round trip reproduces the input up to global phase.
QuditFactorAngles factor_angles_from_vector(std::span<const Complex> v, bool real_mode);

} // namespace groverian
