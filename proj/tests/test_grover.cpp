#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "groverian/grover.hpp"
#include "groverian/rng.hpp"
#include "groverian/state.hpp"

using namespace groverian;

namespace {

QuditRegisterState random_state(int d, int n, Rng& rng) {
    std::vector<Complex> amps(register_dim(d, n));
    for (auto& a : amps) a = rng.gaussian_complex();
    return QuditRegisterState(d, n, std::move(amps), true);
}

Eigen::VectorXcd to_eigen(const QuditRegisterState& psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
    return v;
}

QuditRegisterState from_eigen(int d, int n, const Eigen::VectorXcd& v) {
    std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) amps[static_cast<std::size_t>(i)] = v(i);
    return QuditRegisterState(d, n, std::move(amps));
}

double max_abs_diff(const QuditRegisterState& a, const QuditRegisterState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("oracle reflection flips exactly the marked amplitude") {
    const QuditRegisterState psi = uniform_state(3, 2);
    const QuditRegisterState out = oracle_reflect(psi, 0);
    CHECK(out[0].real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    for (std::size_t i = 1; i < 9; ++i)
        CHECK(out[i].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(oracle_reflect(psi, 9), IndexOutOfRange);
}

TEST_CASE("reflections match their dense operator forms") {
    // oracle: build I - 2|W><W| and P_ref = 2|ref><ref| - I explicitly and
    // apply them as matrices; the rank-1 implementation must agree
    Rng rng(101);
    const int d = 3, n = 2;
    const Eigen::Index dim = 9;
    for (int rep = 0; rep < 25; ++rep) {
        const QuditRegisterState psi = random_state(d, n, rng);
        const QuditRegisterState ref = random_state(d, n, rng);
        const std::size_t w = rng.next_u64() % 9;

        Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(dim, dim);
        pw(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w)) = Complex{-1.0, 0.0};
        const Eigen::VectorXcd rv = to_eigen(ref);
        const Eigen::MatrixXcd pr =
            2.0 * rv * rv.adjoint() - Eigen::MatrixXcd::Identity(dim, dim);

        const QuditRegisterState via_matrix_w = from_eigen(d, n, pw * to_eigen(psi));
        CHECK(max_abs_diff(oracle_reflect(psi, w), via_matrix_w) < 1e-12);

        const QuditRegisterState via_matrix_r = from_eigen(d, n, pr * to_eigen(psi));
        CHECK(max_abs_diff(diffusion_reflect(psi, ref), via_matrix_r) < 1e-12);
    }
}

TEST_CASE("reflections are involutions and preserve norm") {
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const QuditRegisterState psi = random_state(3, 2, rng);
        const QuditRegisterState ref = uniform_state(3, 2);
        CHECK(max_abs_diff(oracle_reflect(oracle_reflect(psi, 4), 4), psi) < 1e-13);
        CHECK(max_abs_diff(diffusion_reflect(diffusion_reflect(psi, ref), ref), psi) <
              1e-13);
        CHECK(std::abs(oracle_reflect(psi, 4).norm() - 1.0) < kUnitaryTolerance);
        CHECK(std::abs(diffusion_reflect(psi, ref).norm() - 1.0) < kUnitaryTolerance);
    }
}

TEST_CASE("diffusion fixes its reference and negates the orthogonal complement") {
    const QuditRegisterState ref = uniform_state(3, 2);
    CHECK(max_abs_diff(diffusion_reflect(ref, ref), ref) < 1e-14);

    // components orthogonal to span{|W>, |ref>} pick up exactly a sign per
    // iteration: G x = P_ref P_W x = -x there, and G^2 x = x
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        QuditRegisterState raw = random_state(3, 2, rng);
        Eigen::VectorXcd v = to_eigen(raw);
        const Eigen::VectorXcd r = to_eigen(ref);
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(9);
        w(0) = Complex{1.0, 0.0};
        // orthonormalize {w, r}, then project v off the span
        Eigen::VectorXcd rt = r - (w.adjoint() * r)(0) * w;
        rt.normalize();
        v -= (w.adjoint() * v)(0) * w;
        v -= (rt.adjoint() * v)(0) * rt;
        v.normalize();
        const QuditRegisterState perp = from_eigen(3, 2, v);
        GroverConfig cfg;
        cfg.marked = 0;
        cfg.iterations = 1;
        const QuditRegisterState once = grover_iterate(perp, cfg, ref);
        CHECK(max_abs_diff(once, from_eigen(3, 2, -v)) < 1e-10);
        cfg.iterations = 2;
        CHECK(max_abs_diff(grover_iterate(perp, cfg, ref), perp) < 1e-10);
    }
}

TEST_CASE("grover_iterate equals the reflection composition") {
    Rng rng(29);
    const QuditRegisterState ref = uniform_state(3, 2);
    for (int rep = 0; rep < 10; ++rep) {
        const QuditRegisterState psi = random_state(3, 2, rng);
        GroverConfig cfg;
        cfg.marked = 3;
        cfg.iterations = 3;
        QuditRegisterState manual = psi;
        for (int k = 0; k < 3; ++k)
            manual = diffusion_reflect(oracle_reflect(manual, 3), ref);
        CHECK(max_abs_diff(grover_iterate(psi, cfg, ref), manual) < 1e-12);
        CHECK(std::abs(manual.norm() - 1.0) < 1e-10);
    }

    GroverConfig zero;
    zero.marked = 0;
    zero.iterations = 0;
    CHECK(max_abs_diff(grover_iterate(ref, zero, ref), ref) == 0.0);
    GroverConfig neg;
    neg.iterations = -1;
    CHECK_THROWS_AS(grover_iterate(ref, neg, ref), RangeViolation);
}

TEST_CASE("success probability follows the sine closed form from uniform") {
    // N = 9: success after m iterations is sin^2((2m+1) asin(1/3))
    const double theta = std::asin(1.0 / 3.0);
    const QuditRegisterState start = uniform_state(3, 2);
    CHECK(success_probability(start, 0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

    for (int m = 0; m <= 4; ++m) {
        GroverConfig cfg;
        cfg.marked = 0;
        cfg.iterations = m;
        const QuditRegisterState out = grover_iterate(start, cfg, start);
        const double expected = std::pow(std::sin((2 * m + 1) * theta), 2);
        CHECK(success_probability(out, 0) == doctest::Approx(expected).epsilon(1e-10));
    }

    // the iteration-1 and iteration-2 values, frozen: 529/729 and (241/243)^2
    GroverConfig one;
    one.marked = 0;
    one.iterations = 1;
    CHECK(success_probability(grover_iterate(start, one, start), 0) ==
          doctest::Approx(529.0 / 729.0).epsilon(1e-12));
    GroverConfig two;
    two.marked = 0;
    two.iterations = 2;
    CHECK(success_probability(grover_iterate(start, two, start), 0) ==
          doctest::Approx(0.9836068350014395).epsilon(1e-12));

    CHECK(success_probability(basis_state(3, 2, 5), 5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(success_probability(start, 9), IndexOutOfRange);
}

TEST_CASE("optimal_iterations maximizes the sine form") {
    CHECK(optimal_iterations(3, 2) == 2); // N = 9
    CHECK(optimal_iterations(2, 2) == 1); // N = 4: exact success at m = 1
    CHECK(optimal_iterations(2, 1) == 0); // N = 2: tie between m = 0 and 1

    // brute-force oracle over the principal window m <= ceil(pi / 2 theta).
    // Beyond the first peak the sine keeps creeping closer to 1 for theta
    // irrational in pi, so "the maximizing m" is only well defined there.
    for (const auto& [d, n] : {std::pair{3, 3}, std::pair{2, 6}, std::pair{4, 2}}) {
        const double theta = std::asin(1.0 / std::sqrt(std::pow(d, n)));
        const int m_hi = static_cast<int>(std::ceil(std::numbers::pi / (2.0 * theta)));
        int best_m = 0;
        double best = 0.0;
        for (int m = 0; m <= m_hi; ++m) {
            const double v = std::pow(std::sin((2 * m + 1) * theta), 2);
            if (v > best + 1e-12) {
                best = v;
                best_m = m;
            }
        }
        CHECK(optimal_iterations(d, n) == best_m);
    }
    CHECK_THROWS_AS(optimal_iterations(1, 2), RangeViolation);
}

TEST_CASE("run_search records the full half-step trace") {
    GroverConfig cfg;
    cfg.marked = 0;
    cfg.iterations = 2;
    const EvolutionTrace trace = run_search(3, 2, cfg);
    REQUIRE(trace.records.size() == 5);
    CHECK(trace.records[0].step_label == "init");
    CHECK(trace.records[1].step_label == "iter1:PW");
    CHECK(trace.records[2].step_label == "iter1:Ppsi");
    CHECK(trace.records[3].step_label == "iter2:PW");
    CHECK(trace.records[4].step_label == "iter2:Ppsi");

    // the oracle does not change the success probability; diffusion does
    CHECK(trace.records[1].success_prob ==
          doctest::Approx(trace.records[0].success_prob).epsilon(1e-14));
    CHECK(trace.records[2].success_prob ==
          doctest::Approx(529.0 / 729.0).epsilon(1e-12));
    CHECK(trace.records[4].success_prob ==
          doctest::Approx(0.9836068350014395).epsilon(1e-12));
    CHECK(!trace.records[0].g_groverian.has_value()); // run_search tracks success only
    CHECK(trace.all_converged);

    GroverConfig full_only = cfg;
    full_only.record_half_steps = false;
    CHECK(run_search(3, 2, full_only).records.size() == 3);

    GroverConfig none;
    none.marked = 0;
    none.iterations = 0;
    const EvolutionTrace single = run_search(3, 2, none);
    REQUIRE(single.records.size() == 1);
    CHECK(single.records[0].success_prob == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}
