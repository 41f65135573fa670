#include "groverian/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "groverian/rng.hpp"

namespace groverian {

namespace {

constexpr double kPi = std::numbers::pi;

double factor_dot_sq(const std::vector<Complex>& f, const std::vector<Complex>& u) {
    Complex z{0.0, 0.0};
    for (std::size_t a = 0; a < f.size(); ++a) z += std::conj(f[a]) * u[a];
    return std::norm(z);
}

// Best real unit vector x maximizing |<x|u>|^2 = (x.Re u)^2 + (x.Im u)^2:
// the leading eigenvector of a rank-<=2 Gram problem, solved in the
// span{Re u, Im u} plane. Exact, O(d), deterministic. Returns an empty
// vector when u is numerically zero.
std::vector<Complex> best_real_unit(const std::vector<Complex>& u) {
    const std::size_t d = u.size();
    std::vector<double> a(d), b(d);
    double na2 = 0.0, nb2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        a[i] = u[i].real();
        b[i] = u[i].imag();
        na2 += a[i] * a[i];
        nb2 += b[i] * b[i];
    }
    const double na = std::sqrt(na2), nb = std::sqrt(nb2);
    if (na < 1e-150 && nb < 1e-150) return {};
    std::vector<Complex> x(d, Complex{0.0, 0.0});
    if (nb < 1e-12 * std::max(na, 1e-300)) {
        for (std::size_t i = 0; i < d; ++i) x[i] = a[i] / na;
        return x;
    }
    if (na < 1e-12 * nb) {
        for (std::size_t i = 0; i < d; ++i) x[i] = b[i] / nb;
        return x;
    }
    // orthonormal basis e1 = a/|a|, e2 = (b - (b.e1) e1)/|...|
    double ab = 0.0;
    for (std::size_t i = 0; i < d; ++i) ab += a[i] * b[i];
    const double b1 = ab / na;
    double w2 = 0.0;
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) {
        w[i] = b[i] - (b1 / na) * a[i];
        w2 += w[i] * w[i];
    }
    const double b2 = std::sqrt(w2);
    if (b2 < 1e-12 * nb) { // b parallel to a
        for (std::size_t i = 0; i < d; ++i) x[i] = a[i] / na;
        return x;
    }
    // M restricted to the plane: [[na^2 + b1^2, b1 b2], [b1 b2, b2^2]]
    const double p = na2 + b1 * b1, q = b1 * b2, r = b2 * b2;
    const double lam = 0.5 * (p + r) + std::hypot(0.5 * (p - r), q);
    double c1 = lam - r, c2 = q; // eigenvector (lam - r, q) in {e1, e2}
    if (std::abs(c1) + std::abs(c2) < 1e-12 * lam) { c1 = 1.0; c2 = 0.0; }
    const double cn = std::hypot(c1, c2);
    c1 /= cn;
    c2 /= cn;
    for (std::size_t i = 0; i < d; ++i)
        x[i] = c1 * (a[i] / na) + c2 * (w[i] / b2);
    return x;
}

// One full sweep of exact single-site updates; returns the overlap
// probability at the sweep's end. A factor is replaced only if its
// single-site objective does not decrease, so P is monotone even under
// floating-point noise.
double sweep_once(const QuditRegisterState& psi,
                  std::vector<std::vector<Complex>>& factors, bool real_only) {
    const int n = psi.qudit_count();
    double p_latest = 0.0;
    for (int site = 0; site < n; ++site) {
        const std::vector<Complex> u = environment_vector(psi, factors, site);
        std::vector<Complex> cand;
        if (real_only) {
            cand = best_real_unit(u);
        } else {
            double un2 = 0.0;
            for (const Complex& ua : u) un2 += std::norm(ua);
            const double un = std::sqrt(un2);
            if (un >= 1e-150) {
                cand.resize(u.size());
                for (std::size_t a = 0; a < u.size(); ++a) cand[a] = u[a] / un;
            }
        }
        auto& f = factors[static_cast<std::size_t>(site)];
        const double old_val = factor_dot_sq(f, u);
        if (!cand.empty()) {
            const double new_val = factor_dot_sq(cand, u);
            if (new_val >= old_val) {
                f = std::move(cand);
                p_latest = new_val;
                continue;
            }
        }
        p_latest = old_val;
    }
    return p_latest;
}

struct RestartResult {
    double p = 0.0;
    bool converged = false;
    std::vector<std::vector<Complex>> factors;
};

RestartResult run_restart(const QuditRegisterState& psi, const OptimizerConfig& cfg,
                          std::uint64_t sub_seed) {
    Rng rng(sub_seed);
    const int d = psi.level_count();
    const int n = psi.qudit_count();

    RestartResult res;
    res.factors.reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        QuditFactorAngles f;
        f.alpha.resize(static_cast<std::size_t>(d - 1));
        f.chi.resize(static_cast<std::size_t>(d - 1));
        for (int j = 0; j < d - 1; ++j) {
            f.alpha[static_cast<std::size_t>(j)] =
                cfg.real_only ? rng.uniform(-kPi / 2, kPi / 2) : rng.uniform(0.0, kPi / 2);
            f.chi[static_cast<std::size_t>(j)] = cfg.real_only ? 0.0 : rng.uniform(0.0, 2 * kPi);
        }
        res.factors.push_back(single_qudit_factor(f));
    }

    double p_prev = 0.0;
    {
        const std::vector<Complex> u0 = environment_vector(psi, res.factors, 0);
        p_prev = factor_dot_sq(res.factors[0], u0);
    }
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        const double p_now = sweep_once(psi, res.factors, cfg.real_only);
        if (p_now < p_prev - 1e-9)
            throw Error("alternating optimizer decreased the objective"); // invariant
        const double gain = p_now - p_prev;
        p_prev = p_now;
        if (gain < cfg.tolerance) {
            res.converged = true;
            break;
        }
    }
    if (res.converged) {
        // polish: the objective saturates in floating point while the
        // iterate is still contracting toward the fixed point, so sweep
        // until the factors stop moving; that is what makes the analytic
        // gradient vanish at the reported angles
        for (int extra = 0; extra < 256; ++extra) {
            const std::vector<std::vector<Complex>> before = res.factors;
            const double p_now = sweep_once(psi, res.factors, cfg.real_only);
            p_prev = std::max(p_prev, p_now);
            double move = 0.0;
            for (std::size_t s = 0; s < before.size(); ++s)
                for (std::size_t a = 0; a < before[s].size(); ++a)
                    move = std::max(move, std::abs(res.factors[s][a] - before[s][a]));
            if (move <= 1e-12) break;
        }
    }
    res.p = p_prev;
    return res;
}

void check_optimizer_config(const OptimizerConfig& cfg) {
    if (cfg.restarts < 1) throw RangeViolation("restarts must be >= 1");
    if (cfg.max_sweeps < 1) throw RangeViolation("max_sweeps must be >= 1");
    if (!(cfg.tolerance >= 0.0)) throw RangeViolation("tolerance must be >= 0");
    if (cfg.threads < 1) throw RangeViolation("threads must be >= 1");
}

} // namespace

const char* to_string(PmaxMethod method) {
    switch (method) {
        case PmaxMethod::numeric: return "numeric";
        case PmaxMethod::closed_form_2qutrit: return "closed_form_2qutrit";
        case PmaxMethod::schmidt: return "schmidt";
        case PmaxMethod::grid: return "grid";
    }
    return "unknown";
}

double groverian(double p_max) {
    if (!(p_max >= 0.0) || p_max > 1.0 + 1e-9)
        throw OutOfRange("probability " + std::to_string(p_max) + " outside [0, 1 + 1e-9]");
    return std::sqrt(1.0 - std::min(p_max, 1.0));
}

EntanglementReport pmax_numeric(const QuditRegisterState& psi,
                                const OptimizerConfig& config) {
    check_optimizer_config(config);
    const int restarts = config.restarts;
    std::vector<RestartResult> results(static_cast<std::size_t>(restarts));

    const int thread_count = std::min(config.threads, restarts);
    if (thread_count <= 1) {
        for (int r = 0; r < restarts; ++r)
            results[static_cast<std::size_t>(r)] =
                run_restart(psi, config, config.seed + static_cast<std::uint64_t>(r));
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= restarts) return;
                try {
                    results[static_cast<std::size_t>(r)] =
                        run_restart(psi, config, config.seed + static_cast<std::uint64_t>(r));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    // reduction in restart order: results are identical for any thread count
    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].p > results[best].p) best = r;

    const RestartResult& win = results[best];
    if (win.p > 1.0 + 1e-9)
        throw Error("overlap probability exceeded 1 beyond rounding");

    EntanglementReport report;
    report.p_max = std::min(win.p, 1.0);
    report.g = groverian(report.p_max);
    report.method = PmaxMethod::numeric;
    report.converged = win.converged;
    report.restarts_used = restarts;
    QuditProductAngles angles;
    angles.sites.reserve(win.factors.size());
    for (const auto& f : win.factors)
        angles.sites.push_back(factor_angles_from_vector(f, config.real_only));
    report.best_angles = std::move(angles);
    return report;
}

double pmax_closed_form_two_qutrit_real(const Eigen::Matrix3d& a) {
    if (std::abs(a.squaredNorm() - 1.0) > kNormTolerance)
        throw NotNormalized("coefficient matrix must have unit Frobenius norm");
    const double A = std::hypot(a(0, 0) - a(1, 1), a(1, 0) + a(0, 1));
    const double B = std::hypot(a(0, 0) + a(1, 1), a(1, 0) - a(0, 1));
    const double C = std::hypot(a(0, 2), a(1, 2));
    const double D = std::hypot(a(2, 0), a(2, 1));
    const double half_ab = 0.5 * (A + B);
    const double t1 = std::hypot(a(2, 2) - half_ab, C + D);
    const double t2 = std::hypot(a(2, 2) + half_ab, C - D);
    return 0.25 * (t1 + t2) * (t1 + t2);
}

double pmax_closed_form_two_qutrit_real(const QuditRegisterState& psi) {
    if (psi.level_count() != 3 || psi.qudit_count() != 2)
        throw DimensionMismatch("closed form requires a two-qutrit register (d=3, n=2)");
    if (!psi.is_real(1e-9))
        throw RangeViolation("closed form requires real amplitudes");
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            a(i, j) = psi[static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(j)].real();
    return pmax_closed_form_two_qutrit_real(a);
}

double pmax_schmidt_bipartite(const QuditRegisterState& psi, int cut) {
    const int n = psi.qudit_count();
    if (n < 2) throw NotBipartite("bipartite cut requires n >= 2");
    if (cut < 1 || cut >= n)
        throw IndexOutOfRange("cut " + std::to_string(cut) + " outside 1.." +
                              std::to_string(n - 1));
    std::size_t rows = 1, cols = 1;
    for (int k = 0; k < cut; ++k) rows *= static_cast<std::size_t>(psi.level_count());
    for (int k = cut; k < n; ++k) cols *= static_cast<std::size_t>(psi.level_count());

    // big-endian flat index = row * cols + col, so the reshape is direct;
    // sigma_1^2 is the top eigenvalue of the smaller-side Gram matrix
    const bool rows_small = rows <= cols;
    const std::size_t m = rows_small ? rows : cols;
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                                   static_cast<Eigen::Index>(m));
    if (rows_small) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = i; j < rows; ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t c = 0; c < cols; ++c)
                    acc += psi[i * cols + c] * std::conj(psi[j * cols + c]);
                gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
                gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(acc);
            }
    } else {
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = i; j < cols; ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r)
                    acc += std::conj(psi[r * cols + i]) * psi[r * cols + j];
                gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
                gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(acc);
            }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    const double top = solver.eigenvalues()(static_cast<Eigen::Index>(m) - 1);
    return std::clamp(top, 0.0, 1.0);
}

double pmax_grid(const QuditRegisterState& psi, int resolution,
                 std::optional<bool> real_mode, double budget) {
    if (resolution < 2) throw RangeViolation("grid resolution must be >= 2");
    if (!(budget > 0.0)) throw RangeViolation("budget must be positive");
    const int d = psi.level_count();
    const int n = psi.qudit_count();
    const bool real = real_mode.value_or(psi.is_real(1e-9));
    const int pps = real ? d - 1 : 2 * (d - 1);

    const double per_site = std::pow(static_cast<double>(resolution), pps);
    const double total = std::pow(per_site, n);
    if (!(total <= budget))
        throw BudgetExceeded("grid needs " + std::to_string(total) +
                             " evaluations, budget is " + std::to_string(budget));

    // axis values: alphas span the closed canonical range, phases wrap
    std::vector<double> alpha_axis(static_cast<std::size_t>(resolution));
    for (int k = 0; k < resolution; ++k) {
        const double t = static_cast<double>(k) / (resolution - 1);
        alpha_axis[static_cast<std::size_t>(k)] =
            real ? -kPi / 2 + t * kPi : t * kPi / 2;
    }
    std::vector<double> chi_axis(static_cast<std::size_t>(resolution));
    for (int k = 0; k < resolution; ++k)
        chi_axis[static_cast<std::size_t>(k)] = 2 * kPi * k / resolution;

    // all candidate factors for one site (every site shares the axes)
    const std::size_t cand_count = static_cast<std::size_t>(per_site);
    std::vector<std::vector<Complex>> cands;
    cands.reserve(cand_count);
    std::vector<int> digit(static_cast<std::size_t>(pps), 0);
    QuditFactorAngles f;
    f.alpha.resize(static_cast<std::size_t>(d - 1));
    f.chi.assign(static_cast<std::size_t>(d - 1), 0.0);
    for (std::size_t c = 0; c < cand_count; ++c) {
        for (int j = 0; j < d - 1; ++j)
            f.alpha[static_cast<std::size_t>(j)] =
                alpha_axis[static_cast<std::size_t>(digit[static_cast<std::size_t>(j)])];
        if (!real)
            for (int j = 0; j < d - 1; ++j)
                f.chi[static_cast<std::size_t>(j)] =
                    chi_axis[static_cast<std::size_t>(digit[static_cast<std::size_t>(d - 1 + j)])];
        cands.push_back(single_qudit_factor(f));
        for (int j = pps - 1; j >= 0; --j) { // odometer
            if (++digit[static_cast<std::size_t>(j)] < resolution) break;
            digit[static_cast<std::size_t>(j)] = 0;
        }
    }

    // depth-first contraction: at depth s the buffer holds psi contracted
    // with the chosen factors of sites 0..s-1
    std::vector<std::vector<Complex>> buffers(static_cast<std::size_t>(n) + 1);
    std::size_t block = psi.dim();
    for (int s = 0; s <= n; ++s) {
        buffers[static_cast<std::size_t>(s)].resize(block);
        block /= static_cast<std::size_t>(d);
    }
    buffers[0] = psi.amplitudes();

    double best = 0.0;
    auto dfs = [&](auto&& self, int s) -> void {
        const std::vector<Complex>& in = buffers[static_cast<std::size_t>(s)];
        if (s == n) {
            best = std::max(best, std::norm(in[0]));
            return;
        }
        std::vector<Complex>& out = buffers[static_cast<std::size_t>(s) + 1];
        const std::size_t tail = out.size();
        for (const std::vector<Complex>& c : cands) {
            for (std::size_t j = 0; j < tail; ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t a = 0; a < static_cast<std::size_t>(d); ++a)
                    acc += std::conj(c[a]) * in[a * tail + j];
                out[j] = acc;
            }
            self(self, s + 1);
        }
    };
    dfs(dfs, 0);
    return std::min(best, 1.0);
}

} // namespace groverian
