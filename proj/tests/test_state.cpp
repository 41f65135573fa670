#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "groverian/rng.hpp"
#include "groverian/state.hpp"

using namespace groverian;

namespace {

QuditRegisterState random_state(int d, int n, Rng& rng, bool real = false) {
    std::vector<Complex> amps(register_dim(d, n));
    for (auto& a : amps) a = real ? Complex{rng.gaussian(), 0.0} : rng.gaussian_complex();
    return QuditRegisterState(d, n, std::move(amps), true);
}

} // namespace

TEST_CASE("register_dim sizes and caps") {
    CHECK(register_dim(3, 2) == 9);
    CHECK(register_dim(2, 20) == 1u << 20);
    CHECK(register_dim(4, 2) == 16);
    CHECK_THROWS_AS(register_dim(1, 2), RangeViolation);
    CHECK_THROWS_AS(register_dim(3, 0), RangeViolation);
    CHECK_THROWS_AS(register_dim(2, 21), DimensionMismatch);
    CHECK_THROWS_AS(register_dim(3, 13), DimensionMismatch); // 3^13 > 2^20
}

TEST_CASE("basis_index maps 1-based labels big-endian") {
    const std::vector<int> l11{1, 1}, l33{3, 3}, l23{2, 3}, l12{1, 2};
    CHECK(basis_index(3, l11) == 0);
    CHECK(basis_index(3, l33) == 8);
    CHECK(basis_index(3, l23) == 5); // (2-1)*3 + (3-1)
    CHECK(basis_index(3, l12) == 1);

    const std::vector<int> bad0{0, 1}, bad4{4, 1};
    CHECK_THROWS_AS(basis_index(3, bad0), LabelOutOfRange);
    CHECK_THROWS_AS(basis_index(3, bad4), LabelOutOfRange);
}

TEST_CASE("basis_index and basis_labels are inverse bijections") {
    for (const auto& [d, n] : {std::pair{3, 2}, std::pair{2, 4}, std::pair{4, 3}}) {
        const std::size_t dim = register_dim(d, n);
        for (std::size_t flat = 0; flat < dim; ++flat) {
            const std::vector<int> labels = basis_labels(d, n, flat);
            REQUIRE(labels.size() == static_cast<std::size_t>(n));
            for (int l : labels) {
                REQUIRE(l >= 1);
                REQUIRE(l <= d);
            }
            REQUIRE(basis_index(d, labels) == flat);
        }
    }
    CHECK_THROWS_AS(basis_labels(3, 2, 9), IndexOutOfRange);
}

TEST_CASE("make_state validates shape and norm") {
    // maximally entangled two-qutrit state
    const double r = 1.0 / std::sqrt(3.0);
    std::vector<Complex> amps(9, Complex{0.0, 0.0});
    amps[0] = amps[4] = amps[8] = Complex{r, 0.0};
    const QuditRegisterState psi = make_state(3, 2, amps);
    CHECK(psi.level_count() == 3);
    CHECK(psi.qudit_count() == 2);
    CHECK(psi.dim() == 9);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(psi.is_real());

    CHECK_THROWS_AS(make_state(3, 2, std::vector<Complex>(8, Complex{0.5, 0.0})),
                    DimensionMismatch);
    CHECK_THROWS_AS(make_state(3, 1, std::vector<Complex>(3, Complex{0.0, 0.0}), true),
                    ZeroVector);

    std::vector<Complex> off(9, Complex{0.0, 0.0});
    off[0] = Complex{0.9, 0.0};
    CHECK_THROWS_AS(make_state(3, 2, off), NotNormalized);
    const QuditRegisterState fixed = make_state(3, 2, off, true);
    CHECK(fixed[0] == Complex{1.0, 0.0});

    std::vector<Complex> nan_amp(9, Complex{0.0, 0.0});
    nan_amp[0] = Complex{std::nan(""), 0.0};
    CHECK_THROWS_AS(make_state(3, 2, nan_amp), RangeViolation);
}

TEST_CASE("basis_state and uniform_state") {
    const QuditRegisterState b = basis_state(3, 2, 5);
    CHECK(b[5] == Complex{1.0, 0.0});
    CHECK(b[0] == Complex{0.0, 0.0});
    CHECK_THROWS_AS(basis_state(3, 2, 9), IndexOutOfRange);

    const QuditRegisterState u = uniform_state(3, 2);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(u[i].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("tensor_product structure") {
    const QuditRegisterState a = basis_state(3, 1, 0); // |1>
    const QuditRegisterState b = basis_state(3, 1, 1); // |2>
    const QuditRegisterState ab = tensor_product(a, b);
    CHECK(ab.qudit_count() == 2);
    const std::vector<int> l12{1, 2};
    CHECK(ab[basis_index(3, l12)] == Complex{1.0, 0.0});

    const QuditRegisterState uu = tensor_product(uniform_state(3, 1), uniform_state(3, 1));
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(uu[i].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(tensor_product(basis_state(2, 1, 0), basis_state(3, 1, 0)),
                    LevelMismatch);

    // amplitude factorization and unit norm on random inputs
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const QuditRegisterState x = random_state(3, 1, rng);
        const QuditRegisterState y = random_state(3, 2, rng);
        const QuditRegisterState xy = tensor_product(x, y);
        CHECK(xy.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < x.dim(); ++i)
            for (std::size_t j = 0; j < y.dim(); ++j)
                CHECK(std::abs(xy[i * y.dim() + j] - x[i] * y[j]) < 1e-14);
    }
}

TEST_CASE("inner_product is conjugate-linear in the first argument") {
    const double r = 1.0 / std::sqrt(3.0);
    std::vector<Complex> amps(9, Complex{0.0, 0.0});
    amps[0] = amps[4] = amps[8] = Complex{r, 0.0};
    const QuditRegisterState psi = make_state(3, 2, amps);

    CHECK(std::abs(inner_product(psi, psi) - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(inner_product(basis_state(3, 2, 0), basis_state(3, 2, 4))) < 1e-15);
    CHECK(inner_product(basis_state(3, 2, 0), psi).real() == doctest::Approx(r));

    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const QuditRegisterState a = random_state(3, 2, rng);
        const QuditRegisterState b = random_state(3, 2, rng);
        const Complex ab = inner_product(a, b);
        const Complex ba = inner_product(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-13);
        CHECK(std::abs(ab) <= 1.0 + 1e-12); // Cauchy-Schwarz on unit vectors
    }
    CHECK_THROWS_AS(inner_product(basis_state(3, 2, 0), basis_state(3, 1, 0)),
                    DimensionMismatch);
}

TEST_CASE("reduced_density_matrix known values") {
    // product |12>: site 1 reduces to the pure projector |1><1|
    const QuditRegisterState prod = basis_state(3, 2, 1);
    const DensityMatrix rho1 = reduced_density_matrix(prod, 1);
    CHECK(std::abs(rho1.entries()(0, 0) - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(rho1.entries()(1, 1)) < 1e-14);

    // maximally entangled: both reductions are I/3
    const double r = 1.0 / std::sqrt(3.0);
    std::vector<Complex> amps(9, Complex{0.0, 0.0});
    amps[0] = amps[4] = amps[8] = Complex{r, 0.0};
    const QuditRegisterState psi = make_state(3, 2, amps);
    for (int keep : {1, 2}) {
        const DensityMatrix rho = reduced_density_matrix(psi, keep);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(rho.entries()(i, j) -
                               (i == j ? Complex{1.0 / 3.0, 0.0} : Complex{0.0, 0.0})) <
                      1e-14);
    }

    // (|11> + |22>)/sqrt(2): eigenvalues (1/2, 1/2, 0)
    std::vector<Complex> bell(9, Complex{0.0, 0.0});
    bell[0] = bell[4] = Complex{1.0 / std::sqrt(2.0), 0.0};
    const DensityMatrix rho_bell = reduced_density_matrix(make_state(3, 2, bell), 2);
    const Eigen::VectorXd ev = rho_bell.eigenvalues();
    CHECK(ev(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(ev(2)) < 1e-12);

    CHECK_THROWS_AS(reduced_density_matrix(psi, 0), IndexOutOfRange);
    CHECK_THROWS_AS(reduced_density_matrix(psi, 3), IndexOutOfRange);
    CHECK_THROWS_AS(reduced_density_matrix(basis_state(3, 1, 0), 1), IndexOutOfRange);
}

TEST_CASE("reduced_density_matrix invariants on random states") {
    Rng rng(23);
    for (int rep = 0; rep < 15; ++rep) {
        const int n = 2 + (rep % 2); // n = 2 and n = 3
        const QuditRegisterState psi = random_state(3, n, rng);
        for (int keep = 1; keep <= n; ++keep) {
            const DensityMatrix rho = reduced_density_matrix(psi, keep);
            CHECK(std::abs(rho.entries().trace().real() - 1.0) < 1e-12);
            const Eigen::VectorXd ev = rho.eigenvalues();
            for (int i = 0; i < ev.size(); ++i) CHECK(ev(i) > -1e-12); // PSD
        }
        if (n == 2) {
            // Schmidt symmetry: the two single-site spectra agree as multisets
            const Eigen::VectorXd e1 = reduced_density_matrix(psi, 1).eigenvalues();
            const Eigen::VectorXd e2 = reduced_density_matrix(psi, 2).eigenvalues();
            for (int i = 0; i < 3; ++i) CHECK(std::abs(e1(i) - e2(i)) < 1e-10);
        }
    }
}

TEST_CASE("DensityMatrix constructor validates") {
    Eigen::MatrixXcd ok = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
    CHECK_NOTHROW(DensityMatrix{ok});

    Eigen::MatrixXcd not_hermitian = ok;
    not_hermitian(0, 1) = Complex{0.1, 0.0};
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, Error);

    Eigen::MatrixXcd bad_trace = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, NotNormalized);

    CHECK_THROWS_AS(DensityMatrix(Eigen::MatrixXcd::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("apply_local_unitary acts on one site") {
    // swap of |1> and |2> on site 1 of |12> gives |22>
    Eigen::MatrixXcd swap12 = Eigen::MatrixXcd::Identity(3, 3);
    swap12(0, 0) = swap12(1, 1) = Complex{0.0, 0.0};
    swap12(0, 1) = swap12(1, 0) = Complex{1.0, 0.0};
    const QuditRegisterState out = apply_local_unitary(basis_state(3, 2, 1), 1, swap12);
    const std::vector<int> l22{2, 2};
    CHECK(std::abs(out[basis_index(3, l22)] - Complex{1.0, 0.0}) < 1e-14);

    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const QuditRegisterState psi = random_state(3, 2, rng);
        // Haar-ish unitary via QR of a gaussian matrix
        Eigen::MatrixXcd gauss(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gauss(i, j) = rng.gaussian_complex();
        const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(gauss)
                                       .householderQ();
        const QuditRegisterState rotated = apply_local_unitary(psi, 1 + (rep % 2), q);
        CHECK(std::abs(rotated.norm() - 1.0) < kUnitaryTolerance);
    }

    CHECK_THROWS_AS(apply_local_unitary(basis_state(3, 2, 0), 3, swap12),
                    IndexOutOfRange);
    CHECK_THROWS_AS(apply_local_unitary(basis_state(3, 2, 0), 1,
                                        Eigen::MatrixXcd::Identity(2, 2)),
                    DimensionMismatch);
    Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(3, 3) * 2.0;
    CHECK_THROWS_AS(apply_local_unitary(basis_state(3, 2, 0), 1, not_unitary),
                    RangeViolation);
}
