#include "groverian/entropy.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

namespace groverian {

std::vector<double> schmidt_coefficients(const QuditRegisterState& psi) {
    if (psi.qudit_count() != 2)
        throw NotBipartite("Schmidt decomposition requires n = 2, got n = " +
                           std::to_string(psi.qudit_count()));
    const int d = psi.level_count();
    // amplitudes in big-endian order are exactly the row-major d x d
    // coefficient matrix a_{i1 i2}
    Eigen::MatrixXcd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            a(i, j) = psi[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
                          static_cast<std::size_t>(j)];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    std::vector<double> lambda(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        const double s = svd.singularValues()(k); // descending
        lambda[static_cast<std::size_t>(k)] = s * s;
    }
    return lambda;
}

double von_neumann_entropy(const QuditRegisterState& psi, int traced_out,
                           std::optional<double> log_base) {
    if (psi.qudit_count() != 2)
        throw NotBipartite("entropy is defined here for n = 2, got n = " +
                           std::to_string(psi.qudit_count()));
    if (traced_out != 1 && traced_out != 2)
        throw IndexOutOfRange("traced_out must be 1 or 2");
    const double base = log_base.value_or(static_cast<double>(psi.level_count()));
    if (!(base > 0.0) || base == 1.0)
        throw RangeViolation("log base must be positive and not 1");

    const DensityMatrix rho = reduced_density_matrix(psi, traced_out == 1 ? 2 : 1);
    const Eigen::VectorXd evals = rho.eigenvalues();

    double sum = 0.0, entropy_nats = 0.0;
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        double lam = evals(k);
        if (lam < -1e-10) throw Error("reduced density matrix has a negative eigenvalue");
        if (lam < 1e-12) lam = 0.0; // clip: 0 log 0 = 0
        sum += lam;
        if (lam > 0.0) entropy_nats -= lam * std::log(lam);
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw Error("reduced density matrix eigenvalues do not sum to 1");
    return entropy_nats / std::log(base);
}

} // namespace groverian
