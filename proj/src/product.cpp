#include "groverian/product.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace groverian {

namespace {

void check_factor_angles(const QuditFactorAngles& f) {
    if (f.alpha.empty() || f.alpha.size() != f.chi.size())
        throw DimensionMismatch("factor needs d-1 alphas and d-1 phases, got " +
                                std::to_string(f.alpha.size()) + " and " +
                                std::to_string(f.chi.size()));
    for (double a : f.alpha)
        if (!std::isfinite(a)) throw RangeViolation("alpha angles must be finite");
    for (double c : f.chi)
        if (!std::isfinite(c)) throw RangeViolation("chi phases must be finite");
}

// One multiplicative trig factor of a ladder coefficient: sine or cosine of
// alpha[index].
struct TrigFactor {
    char kind; // 's' or 'c'
    int index;
};

// Factor list of level `lv` (1-based), phases excluded. Distinct indices per
// level, so differentiation replaces at most one factor.
std::vector<TrigFactor> level_factors(int d, int lv) {
    std::vector<TrigFactor> fs;
    if (lv == d) {
        fs.push_back({'c', 0});
        return fs;
    }
    fs.push_back({'s', 0});
    if (lv >= 2) fs.push_back({'s', lv - 1});
    const int cos_end = (lv == 1) ? d - 2 : lv - 2;
    for (int k = 1; k <= cos_end; ++k) fs.push_back({'c', k});
    return fs;
}

// Product over the factor list, with the factor at alpha index `dalpha`
// (if any) replaced by its derivative; 0 when the index does not appear.
double level_product(const std::vector<TrigFactor>& fs, const std::vector<double>& alpha,
                     int dalpha) {
    bool found = dalpha < 0;
    double p = 1.0;
    for (const TrigFactor& f : fs) {
        const double s = std::sin(alpha[static_cast<std::size_t>(f.index)]);
        const double c = std::cos(alpha[static_cast<std::size_t>(f.index)]);
        double v = (f.kind == 's') ? s : c;
        if (f.index == dalpha) {
            v = (f.kind == 's') ? c : -s;
            found = true;
        }
        p *= v;
    }
    return found ? p : 0.0;
}

Complex phase_of(const QuditFactorAngles& f, int lv) {
    if (lv == static_cast<int>(f.alpha.size()) + 1) return {1.0, 0.0};
    return std::polar(1.0, f.chi[static_cast<std::size_t>(lv - 1)]);
}

std::size_t check_register_shape(const QuditRegisterState& psi,
                                 const QuditProductAngles& angles) {
    const int d = level_count(angles);
    if (d != psi.level_count() ||
        angles.sites.size() != static_cast<std::size_t>(psi.qudit_count()))
        throw DimensionMismatch("angle set shape does not match the register");
    return angles.sites.size();
}

} // namespace

int level_count(const QuditProductAngles& angles) {
    if (angles.sites.empty()) throw DimensionMismatch("angle set has no sites");
    check_factor_angles(angles.sites.front());
    const std::size_t per_site = angles.sites.front().alpha.size();
    for (const QuditFactorAngles& f : angles.sites) {
        check_factor_angles(f);
        if (f.alpha.size() != per_site)
            throw DimensionMismatch("sites disagree on the level count");
    }
    return static_cast<int>(per_site) + 1;
}

QuditFactorAngles to_qudit_angles(const QutritFactorAngles& f) {
    return {{f.theta, f.gamma}, {f.chi, f.chi_prime}};
}

QuditProductAngles to_qudit_angles(const QutritProductAngles& angles) {
    QuditProductAngles out;
    out.sites.reserve(angles.sites.size());
    for (const QutritFactorAngles& f : angles.sites) out.sites.push_back(to_qudit_angles(f));
    return out;
}

std::vector<Complex> single_qudit_factor(const QuditFactorAngles& f) {
    check_factor_angles(f);
    const int d = static_cast<int>(f.alpha.size()) + 1;
    std::vector<Complex> v(static_cast<std::size_t>(d));
    for (int lv = 1; lv <= d; ++lv)
        v[static_cast<std::size_t>(lv - 1)] =
            phase_of(f, lv) * level_product(level_factors(d, lv), f.alpha, -1);
    return v;
}

std::vector<Complex> single_qudit_factor_derivative(const QuditFactorAngles& f,
                                                    int param_index) {
    check_factor_angles(f);
    const int d = static_cast<int>(f.alpha.size()) + 1;
    if (param_index < 0 || param_index >= 2 * (d - 1))
        throw IndexOutOfRange("parameter index " + std::to_string(param_index) +
                              " outside 0.." + std::to_string(2 * (d - 1) - 1));
    std::vector<Complex> v(static_cast<std::size_t>(d), Complex{0.0, 0.0});
    if (param_index < d - 1) {
        for (int lv = 1; lv <= d; ++lv)
            v[static_cast<std::size_t>(lv - 1)] =
                phase_of(f, lv) *
                level_product(level_factors(d, lv), f.alpha, param_index);
    } else {
        // d/d chi_m multiplies level m by i and kills everything else
        const int lv = param_index - (d - 1) + 1;
        v[static_cast<std::size_t>(lv - 1)] =
            Complex{0.0, 1.0} * phase_of(f, lv) *
            level_product(level_factors(d, lv), f.alpha, -1);
    }
    return v;
}

QuditRegisterState qudit_product_state(const QuditProductAngles& angles) {
    const int d = level_count(angles);
    std::vector<std::vector<Complex>> factors;
    factors.reserve(angles.sites.size());
    for (const QuditFactorAngles& f : angles.sites)
        factors.push_back(single_qudit_factor(f));
    return product_state_from_factors(d, factors);
}

QuditRegisterState qutrit_product_state(const QutritProductAngles& angles) {
    return qudit_product_state(to_qudit_angles(angles));
}

QuditRegisterState product_state_from_factors(
    int d, const std::vector<std::vector<Complex>>& factors) {
    if (factors.empty()) throw DimensionMismatch("need at least one factor");
    for (const auto& f : factors)
        if (f.size() != static_cast<std::size_t>(d))
            throw DimensionMismatch("factor length does not match d");
    const int n = static_cast<int>(factors.size());
    const std::size_t dim = register_dim(d, n);
    std::vector<Complex> amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Complex prod{1.0, 0.0};
        std::size_t rest = i;
        for (int k = n - 1; k >= 0; --k) {
            prod *= factors[static_cast<std::size_t>(k)][rest % static_cast<std::size_t>(d)];
            rest /= static_cast<std::size_t>(d);
        }
        amps[i] = prod;
    }
    // factors are unit vectors, so the product is normalized up to rounding
    return QuditRegisterState(d, n, std::move(amps));
}

std::vector<Complex> environment_vector(const QuditRegisterState& psi,
                                        const std::vector<std::vector<Complex>>& factors,
                                        int site) {
    const int d = psi.level_count();
    const int n = psi.qudit_count();
    if (factors.size() != static_cast<std::size_t>(n))
        throw DimensionMismatch("factor count does not match the register");
    if (site < 0 || site >= n) throw IndexOutOfRange("site outside 0..n-1");
    for (const auto& f : factors)
        if (f.size() != static_cast<std::size_t>(d))
            throw DimensionMismatch("factor length does not match d");

    std::vector<Complex> u(static_cast<std::size_t>(d), Complex{0.0, 0.0});
    const std::size_t dim = psi.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        Complex prod = psi[i];
        std::size_t rest = i;
        std::size_t site_digit = 0;
        for (int k = n - 1; k >= 0; --k) {
            const std::size_t digit = rest % static_cast<std::size_t>(d);
            rest /= static_cast<std::size_t>(d);
            if (k == site)
                site_digit = digit;
            else
                prod *= std::conj(factors[static_cast<std::size_t>(k)][digit]);
        }
        u[site_digit] += prod;
    }
    return u;
}

double overlap_probability(const QuditRegisterState& psi,
                           const QuditProductAngles& angles) {
    check_register_shape(psi, angles);
    std::vector<std::vector<Complex>> factors;
    factors.reserve(angles.sites.size());
    for (const QuditFactorAngles& f : angles.sites)
        factors.push_back(single_qudit_factor(f));
    const std::vector<Complex> u = environment_vector(psi, factors, 0);
    Complex z{0.0, 0.0};
    for (std::size_t a = 0; a < factors[0].size(); ++a)
        z += std::conj(factors[0][a]) * u[a];
    return std::norm(z);
}

double overlap_probability(const QuditRegisterState& psi,
                           const QutritProductAngles& angles) {
    return overlap_probability(psi, to_qudit_angles(angles));
}

std::vector<double> overlap_gradient(const QuditRegisterState& psi,
                                     const QuditProductAngles& angles) {
    const std::size_t n = check_register_shape(psi, angles);
    const int d = psi.level_count();
    const int per_site = 2 * (d - 1);

    std::vector<std::vector<Complex>> factors;
    factors.reserve(n);
    for (const QuditFactorAngles& f : angles.sites)
        factors.push_back(single_qudit_factor(f));

    std::vector<double> grad(n * static_cast<std::size_t>(per_site), 0.0);
    Complex z{0.0, 0.0};
    for (std::size_t s = 0; s < n; ++s) {
        const std::vector<Complex> u = environment_vector(psi, factors, static_cast<int>(s));
        if (s == 0)
            for (std::size_t a = 0; a < u.size(); ++a)
                z += std::conj(factors[0][a]) * u[a];
        for (int p = 0; p < per_site; ++p) {
            // dz/dp = sum_a conj(df_s[a]) u[a]; dP = 2 Re(conj(z) dz)
            const std::vector<Complex> df =
                single_qudit_factor_derivative(angles.sites[s], p);
            Complex dz{0.0, 0.0};
            for (std::size_t a = 0; a < u.size(); ++a) dz += std::conj(df[a]) * u[a];
            grad[s * static_cast<std::size_t>(per_site) + static_cast<std::size_t>(p)] =
                2.0 * (std::conj(z) * dz).real();
        }
    }
    return grad;
}

std::vector<double> overlap_gradient(const QuditRegisterState& psi,
                                     const QutritProductAngles& angles) {
    return overlap_gradient(psi, to_qudit_angles(angles));
}

QuditFactorAngles factor_angles_from_vector(std::span<const Complex> v, bool real_mode) {
    const int d = static_cast<int>(v.size());
    if (d < 2) throw DimensionMismatch("factor vector needs at least 2 entries");

    QuditFactorAngles out;
    out.alpha.assign(static_cast<std::size_t>(d - 1), 0.0);
    out.chi.assign(static_cast<std::size_t>(d - 1), 0.0);

    if (real_mode) {
        // global sign fixed by making the level-d component nonnegative,
        // then the sign of level 1 picks the sign of sin(alpha_1)
        std::vector<double> x(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) x[i] = v[i].real();
        if (x[static_cast<std::size_t>(d - 1)] < 0.0)
            for (double& xi : x) xi = -xi;
        const double cd = std::min(1.0, x[static_cast<std::size_t>(d - 1)]);
        const double r = std::sqrt(std::max(0.0, 1.0 - cd * cd));
        if (r < 1e-12) return out; // all mass on level d: every angle zero
        const double s1 = (x[0] < 0.0) ? -r : r;
        out.alpha[0] = std::atan2(s1, cd);
        double prefix = 1.0; // prod cos(alpha_k), k = 2..lv-1
        for (int lv = 2; lv <= d - 1; ++lv) {
            if (prefix < 1e-12) break; // remaining components are ~0
            const double y = x[static_cast<std::size_t>(lv - 1)] / s1;
            out.alpha[static_cast<std::size_t>(lv - 1)] =
                std::asin(std::clamp(y / prefix, -1.0, 1.0));
            prefix *= std::cos(out.alpha[static_cast<std::size_t>(lv - 1)]);
        }
        return out;
    }

    // full mode: strip the global phase so the level-d component is real >= 0
    const double mag_d = std::abs(v[static_cast<std::size_t>(d - 1)]);
    const Complex unphase =
        mag_d > 1e-15 ? std::conj(v[static_cast<std::size_t>(d - 1)]) / mag_d
                      : Complex{1.0, 0.0};
    const double cd = std::min(1.0, mag_d);
    const double r = std::sqrt(std::max(0.0, 1.0 - cd * cd));
    out.alpha[0] = std::acos(cd);
    if (r < 1e-12) return out;
    std::vector<double> t(static_cast<std::size_t>(d - 1), 0.0);
    for (int lv = 1; lv <= d - 1; ++lv) {
        const Complex w = v[static_cast<std::size_t>(lv - 1)] * unphase;
        t[static_cast<std::size_t>(lv - 1)] = std::abs(w) / r;
        out.chi[static_cast<std::size_t>(lv - 1)] = std::abs(w) > 1e-15 ? std::arg(w) : 0.0;
    }
    double prefix = 1.0;
    for (int lv = 2; lv <= d - 1; ++lv) {
        if (prefix < 1e-12) break;
        out.alpha[static_cast<std::size_t>(lv - 1)] =
            std::asin(std::clamp(t[static_cast<std::size_t>(lv - 1)] / prefix, 0.0, 1.0));
        prefix *= std::cos(out.alpha[static_cast<std::size_t>(lv - 1)]);
    }
    return out;
}

} // namespace groverian
