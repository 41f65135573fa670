#pragma once

// Dense n-qudit register states.
//
// A pure state of n qudits with d levels each is the full complex amplitude
// vector over the d^n computational basis states
//
//     |psi> = sum a_{i1...in} |i1 i2 ... in>,   i_k in {1..d}.
//
// Basis labels are 1-based (|1>..|d| per site); storage is a flat 0-based
// vector in big-endian base-d order, i.e. site 1 is the most significant
// digit:  flat(i1..in) = sum_k (i_k - 1) d^(n-k).
//
// States are immutable after construction and always hold unit norm within
// kNormTolerance; operations return new states.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "groverian/errors.hpp"

namespace groverian {

using Complex = std::complex<double>;

// Dense-representation ceiling: registers larger than 2^20 amplitudes are
// refused at construction.
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 20;

// Accepted deviation of an input norm (or trace) from 1.
inline constexpr double kNormTolerance = 1e-9;

// Norm drift budget for a single claimed-unitary application.
inline constexpr double kUnitaryTolerance = 1e-12;

// d^n with overflow/cap checking. Throws RangeViolation for d < 2 or n < 1,
// DimensionMismatch beyond kMaxAmplitudes.
std::size_t register_dim(int d, int n);

// Flat index of |labels[0] ... labels[n-1]>. Labels are 1-based; each must
// lie in 1..d or LabelOutOfRange is thrown.
std::size_t basis_index(int d, std::span<const int> labels);

// Inverse of basis_index: the 1-based label tuple of a flat index.
std::vector<int> basis_labels(int d, int n, std::size_t flat);

class QuditRegisterState {
public:
    // Validates shape and norm. With normalize set, rescales to unit norm
    // (ZeroVector if the norm is ~0); otherwise requires the norm to be
    // within kNormTolerance of 1 (NotNormalized).
    QuditRegisterState(int d, int n, std::vector<Complex> amplitudes,
                       bool normalize = false);

    int level_count() const { return d_; }
    int qudit_count() const { return n_; }
    std::size_t dim() const { return amps_.size(); }

    const std::vector<Complex>& amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t flat) const { return amps_[flat]; }

    double norm() const;

    // True when every imaginary part is at most tol in magnitude.
    bool is_real(double tol = 1e-12) const;

private:
    int d_;
    int n_;
    std::vector<Complex> amps_;
};

// Factory matching the constructor; the spelled-out entry point.
inline QuditRegisterState make_state(int d, int n, std::vector<Complex> amplitudes,
                                     bool normalize = false) {
    return QuditRegisterState(d, n, std::move(amplitudes), normalize);
}

// |i1 ... in> for a flat index.
QuditRegisterState basis_state(int d, int n, std::size_t flat);

// Equal-weight superposition 1/sqrt(d^n) sum |i1...in>, the Grover start.
QuditRegisterState uniform_state(int d, int n);

// Kronecker product |a> (x) |b>; operands must share d (LevelMismatch).
QuditRegisterState tensor_product(const QuditRegisterState& a,
                                  const QuditRegisterState& b);

// <a|b>, conjugate-linear in the first argument. Shapes must match.
Complex inner_product(const QuditRegisterState& a, const QuditRegisterState& b);

// Density matrix with validated Hermiticity (1e-10) and unit trace
// (kNormTolerance). Eigenvalues are returned in descending order.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    Eigen::VectorXd eigenvalues() const;

private:
    Eigen::MatrixXcd entries_;
};

// Reduced density matrix of the 1-based site `keep`, tracing out all other
// sites. Requires n >= 2 and 1 <= keep <= n (IndexOutOfRange).
DensityMatrix reduced_density_matrix(const QuditRegisterState& psi, int keep);

// Applies a d x d unitary to the 1-based site `site`. The matrix must be
// unitary within 1e-8 (RangeViolation) so the norm invariant survives.
QuditRegisterState apply_local_unitary(const QuditRegisterState& psi, int site,
                                       const Eigen::MatrixXcd& u);

} // namespace groverian
