#ifndef TDICKE_DYNAMICS_HPP
#define TDICKE_DYNAMICS_HPP

#include <span>
#include <vector>

#include "tdicke/state.hpp"

namespace tdicke {

enum class SolverKind { rk4, eigen, expm };
const char* to_string(SolverKind s);

/// Snapshots of beta(t); column k of `amplitudes` is the state at times[k].
struct Trajectory {
    std::vector<Real> times;
    ComplexMatrix amplitudes;
    Basis basis = Basis::fock;
    KernelKind kernel = KernelKind::sine;
    SolverKind solver = SolverKind::rk4;
    Real dt = 0.0;  // 0 for solvers without a step

    std::size_t snapshot_count() const noexcept { return times.size(); }
    AmplitudeState state(std::size_t k) const {
        return {amplitudes.col(static_cast<Eigen::Index>(k)), basis};
    }
};

/// Eigenmode expansion beta(t) = sum_i c_i V_i exp(lambda_i t).
struct EigenSolution {
    ComplexVector eigenvalues;
    ComplexMatrix eigenvectors;
    ComplexVector coefficients;

    ComplexVector evaluate(Real t) const;
};

inline constexpr Real kDefaultTimeStep = 0.01;

/**
 * Classical fixed-step RK4 on d(beta)/dt = M beta. Snapshot k is taken after
 * k*stride steps at time k*stride*dt; the step count is t_max/dt rounded up.
 */
Trajectory rk4_propagate(const GeneratorMatrix& m, const AmplitudeState& beta0, Real dt,
                         Real t_max, int stride = 1);

/// Throws ErrorCode::degenerate_spectrum when the eigenvector matrix has a
/// condition number above 1e12.
EigenSolution eigen_decompose(const GeneratorMatrix& m, const AmplitudeState& beta0);

Trajectory eigen_solve(const GeneratorMatrix& m, const AmplitudeState& beta0,
                       std::span<const Real> times);

/// exp(A) by scaling and squaring around a truncated Taylor series.
ComplexMatrix oracle_expm_matrix(const ComplexMatrix& a);

/// exp(M t) beta0.
AmplitudeState oracle_expm(const GeneratorMatrix& m, const AmplitudeState& beta0, Real t);

/// Uniform grid 0, step, 2 step, ... covering [0, t_max].
std::vector<Real> time_grid(Real step, Real t_max, int stride = 1);

namespace serial {
Trajectory rk4_propagate(const GeneratorMatrix& m, const AmplitudeState& beta0, Real dt,
                         Real t_max, int stride = 1);
}

} // namespace tdicke

#endif // TDICKE_DYNAMICS_HPP
