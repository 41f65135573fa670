#include "groverian/state.hpp"

#include <cmath>
#include <string>

namespace groverian {

std::size_t register_dim(int d, int n) {
    if (d < 2) throw RangeViolation("level count d must be >= 2, got " + std::to_string(d));
    if (n < 1) throw RangeViolation("qudit count n must be >= 1, got " + std::to_string(n));
    std::size_t dim = 1;
    for (int k = 0; k < n; ++k) {
        if (dim > kMaxAmplitudes / static_cast<std::size_t>(d))
            throw DimensionMismatch("register dimension " + std::to_string(d) + "^" +
                                    std::to_string(n) + " exceeds the dense cap 2^20");
        dim *= static_cast<std::size_t>(d);
    }
    return dim;
}

std::size_t basis_index(int d, std::span<const int> labels) {
    if (d < 2) throw RangeViolation("level count d must be >= 2");
    if (labels.empty()) throw RangeViolation("label tuple must be non-empty");
    std::size_t flat = 0;
    for (int label : labels) {
        if (label < 1 || label > d)
            throw LabelOutOfRange("basis label " + std::to_string(label) +
                                  " outside 1.." + std::to_string(d));
        flat = flat * static_cast<std::size_t>(d) + static_cast<std::size_t>(label - 1);
    }
    return flat;
}

std::vector<int> basis_labels(int d, int n, std::size_t flat) {
    const std::size_t dim = register_dim(d, n);
    if (flat >= dim)
        throw IndexOutOfRange("flat index " + std::to_string(flat) +
                              " outside 0.." + std::to_string(dim - 1));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        labels[static_cast<std::size_t>(k)] =
            static_cast<int>(flat % static_cast<std::size_t>(d)) + 1;
        flat /= static_cast<std::size_t>(d);
    }
    return labels;
}

QuditRegisterState::QuditRegisterState(int d, int n, std::vector<Complex> amplitudes,
                                       bool normalize)
    : d_(d), n_(n), amps_(std::move(amplitudes)) {
    const std::size_t dim = register_dim(d, n);
    if (amps_.size() != dim)
        throw DimensionMismatch("amplitude vector has " + std::to_string(amps_.size()) +
                                " entries, expected " + std::to_string(dim));
    double norm_sq = 0.0;
    for (const Complex& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw RangeViolation("amplitudes must be finite");
        norm_sq += std::norm(a);
    }
    const double nrm = std::sqrt(norm_sq);
    if (normalize) {
        if (nrm < 1e-12) throw ZeroVector("cannot normalize a zero amplitude vector");
        for (Complex& a : amps_) a /= nrm;
    } else if (std::abs(nrm - 1.0) > kNormTolerance) {
        throw NotNormalized("state norm " + std::to_string(nrm) +
                            " deviates from 1 beyond 1e-9");
    }
}

double QuditRegisterState::norm() const {
    double norm_sq = 0.0;
    for (const Complex& a : amps_) norm_sq += std::norm(a);
    return std::sqrt(norm_sq);
}

bool QuditRegisterState::is_real(double tol) const {
    for (const Complex& a : amps_)
        if (std::abs(a.imag()) > tol) return false;
    return true;
}

QuditRegisterState basis_state(int d, int n, std::size_t flat) {
    const std::size_t dim = register_dim(d, n);
    if (flat >= dim)
        throw IndexOutOfRange("flat index " + std::to_string(flat) +
                              " outside 0.." + std::to_string(dim - 1));
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[flat] = Complex{1.0, 0.0};
    return QuditRegisterState(d, n, std::move(amps));
}

QuditRegisterState uniform_state(int d, int n) {
    const std::size_t dim = register_dim(d, n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Complex> amps(dim, Complex{amp, 0.0});
    return QuditRegisterState(d, n, std::move(amps));
}

QuditRegisterState tensor_product(const QuditRegisterState& a,
                                  const QuditRegisterState& b) {
    if (a.level_count() != b.level_count())
        throw LevelMismatch("tensor operands have level counts " +
                            std::to_string(a.level_count()) + " and " +
                            std::to_string(b.level_count()));
    // Big-endian order makes the product a plain Kronecker product.
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps[i * b.dim() + j] = a[i] * b[j];
    return QuditRegisterState(a.level_count(), a.qudit_count() + b.qudit_count(),
                              std::move(amps));
}

Complex inner_product(const QuditRegisterState& a, const QuditRegisterState& b) {
    if (a.level_count() != b.level_count() || a.qudit_count() != b.qudit_count())
        throw DimensionMismatch("inner product requires equal register shapes");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw DimensionMismatch("density matrix must be square");
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw Error("density matrix not Hermitian within 1e-10");
    if (std::abs(entries_.trace().real() - 1.0) > kNormTolerance ||
        std::abs(entries_.trace().imag()) > kNormTolerance)
        throw NotNormalized("density matrix trace deviates from 1 beyond 1e-9");
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_);
    Eigen::VectorXd vals = solver.eigenvalues(); // ascending
    return vals.reverse();
}

DensityMatrix reduced_density_matrix(const QuditRegisterState& psi, int keep) {
    const int n = psi.qudit_count();
    const int d = psi.level_count();
    if (n < 2) throw IndexOutOfRange("reduced_density_matrix requires n >= 2");
    if (keep < 1 || keep > n)
        throw IndexOutOfRange("keep site " + std::to_string(keep) +
                              " outside 1.." + std::to_string(n));

    // stride of site `keep` in the big-endian flat index
    std::size_t stride = 1;
    for (int k = 0; k < n - keep; ++k) stride *= static_cast<std::size_t>(d);

    // rho[a][b] = sum over the other digits of psi(.., a, ..) conj(psi(.., b, ..))
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    const std::size_t dim = psi.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t a = (i / stride) % static_cast<std::size_t>(d);
        const std::size_t base = i - a * stride;
        for (std::size_t b = 0; b < static_cast<std::size_t>(d); ++b) {
            // pairs (i, j) share every digit except site `keep`
            const std::size_t j = base + b * stride;
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                psi[i] * std::conj(psi[j]);
        }
    }
    return DensityMatrix(std::move(rho));
}

QuditRegisterState apply_local_unitary(const QuditRegisterState& psi, int site,
                                       const Eigen::MatrixXcd& u) {
    const int n = psi.qudit_count();
    const int d = psi.level_count();
    if (site < 1 || site > n)
        throw IndexOutOfRange("site " + std::to_string(site) + " outside 1.." +
                              std::to_string(n));
    if (u.rows() != d || u.cols() != d)
        throw DimensionMismatch("local unitary must be " + std::to_string(d) + "x" +
                                std::to_string(d));
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
        throw RangeViolation("matrix is not unitary within 1e-8");

    std::size_t stride = 1;
    for (int k = 0; k < n - site; ++k) stride *= static_cast<std::size_t>(d);

    std::vector<Complex> out(psi.dim(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const std::size_t a = (i / stride) % static_cast<std::size_t>(d);
        const std::size_t base = i - a * stride;
        for (std::size_t b = 0; b < static_cast<std::size_t>(d); ++b) {
            out[base + b * stride] +=
                u(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) * psi[i];
        }
    }
    return QuditRegisterState(d, n, std::move(out));
}

} // namespace groverian
