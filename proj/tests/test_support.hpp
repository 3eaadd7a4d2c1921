#ifndef TDICKE_TEST_SUPPORT_HPP
#define TDICKE_TEST_SUPPORT_HPP

#include <random>

#include "tdicke/types.hpp"

namespace tdicke::test {

inline Real max_abs(const ComplexMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

inline ComplexVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<Real> g;
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = Complex(g(rng), g(rng));
    return v / v.norm();
}

/// A random dissipative generator: skew-Hermitian part plus a negative
/// definite Hermitian part.
inline ComplexMatrix random_stable_matrix(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<Real> g;
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng)) / std::sqrt(Real(n));
    ComplexMatrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) b(i, j) = Complex(g(rng), g(rng)) / std::sqrt(Real(n));
    const ComplexMatrix skew = 0.5 * (a - a.adjoint());
    const ComplexMatrix damping = -(b * b.adjoint()) / Real(n) - 0.1 * ComplexMatrix::Identity(n, n);
    return skew + damping;
}

} // namespace tdicke::test

#endif
