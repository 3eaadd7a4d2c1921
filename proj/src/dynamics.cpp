#include "tdicke/dynamics.hpp"

#include <cmath>
#include <string>

namespace tdicke {

const char* to_string(SolverKind s) {
    switch (s) {
    case SolverKind::rk4: return "rk4";
    case SolverKind::eigen: return "eigen";
    case SolverKind::expm: return "expm";
    }
    return "?";
}

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_inputs(const GeneratorMatrix& m, const AmplitudeState& beta0) {
    if (m.basis != beta0.basis)
        throw Error(ErrorCode::basis_mismatch,
                    std::string("generator is in the ") + to_string(m.basis) +
                        " basis but the state is in the " + to_string(beta0.basis) + " basis");
    if (m.entries.rows() != m.entries.cols() || m.size() != beta0.size())
        throw Error(ErrorCode::dimension_mismatch, "generator and state sizes differ");
    if (!m.entries.allFinite() || !beta0.amplitudes.allFinite())
        throw Error(ErrorCode::invalid_argument, "non-finite generator or initial state");
}

long step_count(Real dt, Real t_max) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw Error(ErrorCode::invalid_argument, "dt must be positive");
    if (!(t_max >= 0.0) || !std::isfinite(t_max))
        throw Error(ErrorCode::invalid_argument, "t_max must be non-negative");
    const Real ratio = t_max / dt;
    const Real nearest = std::round(ratio);
    return static_cast<long>(std::abs(ratio - nearest) < 1e-9 * std::max(1.0, ratio)
                                 ? nearest
                                 : std::ceil(ratio));
}

// y = M x with one row per iteration; each element is summed in a fixed
// order, so results do not depend on the thread count.
void parallel_matvec(const RowMajorMatrix& m, const ComplexVector& x, ComplexVector& y) {
    const Eigen::Index n = m.rows();
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex* row = m.data() + j * n;
        Complex acc{0.0, 0.0};
        for (Eigen::Index i = 0; i < n; ++i) acc += row[i] * x(i);
        y(j) = acc;
    }
}

template <typename MatVec>
Trajectory rk4_drive(const GeneratorMatrix& m, const AmplitudeState& beta0, Real dt, Real t_max,
                     int stride, MatVec&& apply) {
    check_inputs(m, beta0);
    if (stride < 1) throw Error(ErrorCode::invalid_argument, "stride must be >= 1");
    const long steps = step_count(dt, t_max);
    const Eigen::Index n = beta0.size();
    const long snapshots = steps / stride + 1;

    Trajectory traj;
    traj.basis = m.basis;
    traj.kernel = m.kernel;
    traj.solver = SolverKind::rk4;
    traj.dt = dt;
    traj.times.reserve(static_cast<std::size_t>(snapshots));
    traj.amplitudes.resize(n, snapshots);

    ComplexVector b = beta0.amplitudes;
    ComplexVector k1(n), k2(n), k3(n), k4(n), probe(n);
    traj.times.push_back(0.0);
    traj.amplitudes.col(0) = b;
    Eigen::Index column = 1;
    for (long step = 1; step <= steps; ++step) {
        apply(b, k1);
        probe = b + (0.5 * dt) * k1;
        apply(probe, k2);
        probe = b + (0.5 * dt) * k2;
        apply(probe, k3);
        probe = b + dt * k3;
        apply(probe, k4);
        b += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (step % stride == 0) {
            traj.times.push_back(static_cast<Real>(step) * dt);
            traj.amplitudes.col(column++) = b;
        }
    }
    if (!traj.amplitudes.allFinite())
        throw Error(ErrorCode::range_error, "rk4: trajectory became non-finite");
    return traj;
}

bool is_hermitian(const ComplexMatrix& a) {
    const Real scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

} // namespace

Trajectory rk4_propagate(const GeneratorMatrix& m, const AmplitudeState& beta0, Real dt,
                         Real t_max, int stride) {
    const RowMajorMatrix rows = m.entries;
    return rk4_drive(m, beta0, dt, t_max, stride,
                     [&](const ComplexVector& x, ComplexVector& y) { parallel_matvec(rows, x, y); });
}

namespace serial {

Trajectory rk4_propagate(const GeneratorMatrix& m, const AmplitudeState& beta0, Real dt,
                         Real t_max, int stride) {
    return rk4_drive(m, beta0, dt, t_max, stride,
                     [&](const ComplexVector& x, ComplexVector& y) { y.noalias() = m.entries * x; });
}

} // namespace serial

ComplexVector EigenSolution::evaluate(Real t) const {
    const ComplexVector weights =
        coefficients.cwiseProduct((eigenvalues * t).array().exp().matrix());
    return eigenvectors * weights;
}

EigenSolution eigen_decompose(const GeneratorMatrix& m, const AmplitudeState& beta0) {
    check_inputs(m, beta0);
    EigenSolution sol;

    if (is_hermitian(m.entries)) {
        const ComplexMatrix h = 0.5 * (m.entries + m.entries.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::degenerate_spectrum, "eigen: Hermitian solver did not converge");
        sol.eigenvalues = es.eigenvalues().cast<Complex>();
        sol.eigenvectors = es.eigenvectors();
        sol.coefficients = sol.eigenvectors.adjoint() * beta0.amplitudes;
        return sol;
    }

    Eigen::ComplexEigenSolver<ComplexMatrix> es(m.entries, true);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::degenerate_spectrum, "eigen: solver did not converge; use rk4");
    sol.eigenvalues = es.eigenvalues();
    sol.eigenvectors = es.eigenvectors();

    Eigen::BDCSVD<ComplexMatrix> svd(sol.eigenvectors, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const Real smallest = sv(sv.size() - 1);
    const Real condition = smallest > 0.0 ? sv(0) / smallest : INFINITY;
    if (!(condition < 1e12))
        throw Error(ErrorCode::degenerate_spectrum,
                    "eigen: eigenvector matrix is ill-conditioned (cond " +
                        std::to_string(condition) + "); the spectrum is numerically degenerate, "
                                                    "use the rk4 solver");
    sol.coefficients = svd.solve(beta0.amplitudes);
    return sol;
}

Trajectory eigen_solve(const GeneratorMatrix& m, const AmplitudeState& beta0,
                       std::span<const Real> times) {
    const EigenSolution sol = eigen_decompose(m, beta0);
    Trajectory traj;
    traj.basis = m.basis;
    traj.kernel = m.kernel;
    traj.solver = SolverKind::eigen;
    traj.times.assign(times.begin(), times.end());
    traj.amplitudes.resize(beta0.size(), static_cast<Eigen::Index>(times.size()));

    const auto count = static_cast<Eigen::Index>(times.size());
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < count; ++k)
        traj.amplitudes.col(k) = sol.evaluate(times[static_cast<std::size_t>(k)]);

    // The expansion reproduces beta0 only up to round-off; pin the first
    // snapshot to the exact initial condition.
    if (count > 0 && times[0] == 0.0) traj.amplitudes.col(0) = beta0.amplitudes;
    return traj;
}

ComplexMatrix oracle_expm_matrix(const ComplexMatrix& a) {
    const Eigen::Index n = a.rows();
    Real norm1 = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) norm1 = std::max(norm1, a.col(c).cwiseAbs().sum());
    if (!std::isfinite(norm1)) throw Error(ErrorCode::range_error, "expm: non-finite argument");

    int squarings = 0;
    if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
    if (squarings > 1000) throw Error(ErrorCode::range_error, "expm: argument norm too large");

    const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);
    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    // ||scaled|| <= 1/4: the remainder after 30 terms is far below round-off.
    for (int k = 1; k <= 30; ++k) {
        term = (term * scaled) / static_cast<Real>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
    }
    for (int s = 0; s < squarings; ++s) result = (result * result).eval();

    if (!result.allFinite()) throw Error(ErrorCode::range_error, "expm: result overflowed");
    return result;
}

AmplitudeState oracle_expm(const GeneratorMatrix& m, const AmplitudeState& beta0, Real t) {
    check_inputs(m, beta0);
    if (!std::isfinite(t)) throw Error(ErrorCode::invalid_argument, "expm: non-finite time");
    const ComplexMatrix propagator = oracle_expm_matrix(m.entries * t);
    return {propagator * beta0.amplitudes, beta0.basis};
}

std::vector<Real> time_grid(Real step, Real t_max, int stride) {
    if (stride < 1) throw Error(ErrorCode::invalid_argument, "stride must be >= 1");
    const long steps = step_count(step, t_max);
    std::vector<Real> grid;
    grid.reserve(static_cast<std::size_t>(steps / stride + 1));
    for (long k = 0; k <= steps; k += stride) grid.push_back(static_cast<Real>(k) * step);
    return grid;
}

} // namespace tdicke
