#include "tdicke/kernel.hpp"

#include <cmath>
#include <vector>

namespace tdicke {

namespace {

void require_gamma(Real gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw Error(ErrorCode::invalid_argument, "gamma must be positive and finite");
}

// Block description of one TD state in the ladder family: atoms [0, bulk)
// carry bulk_weight, atom `tail` (if any) carries tail_weight.
struct LadderWeights {
    Eigen::Index bulk;
    Real bulk_weight;
    Eigen::Index tail;  // -1 for |+>
    Real tail_weight;
};

LadderWeights ladder_weights(Eigen::Index row, Eigen::Index n) {
    if (row == 0) return {n, 1.0 / std::sqrt(static_cast<Real>(n)), -1, 0.0};
    const Eigen::Index m = row + 1;
    const Real norm = 1.0 / std::sqrt(static_cast<Real>(m) * static_cast<Real>(m - 1));
    return {m - 1, norm, m - 1, -static_cast<Real>(m - 1) * norm};
}

} // namespace

Complex pair_coupling(KernelKind kind, Real scaled_distance, Real gamma) {
    const Real k = scaled_distance;
    if (kind == KernelKind::sine) return {-gamma * std::sin(k) / k, 0.0};
    return kI * gamma * std::polar(1.0, k) / k;
}

GeneratorMatrix build_generator(const Ensemble& e, KernelKind kind, Real gamma) {
    require_gamma(gamma);
    const PairGeometry g = pair_geometry(e);
    const Eigen::Index n = g.distance.rows();
    ComplexMatrix m(n, n);

#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(j, i) = (j == i) ? self_coupling(gamma) : pair_coupling(kind, g.distance(j, i), gamma);

    return {std::move(m), Basis::fock, kind, gamma};
}

GeneratorMatrix build_sine_generator(const Ensemble& e, Real gamma) {
    return build_generator(e, KernelKind::sine, gamma);
}

GeneratorMatrix build_exp_generator(const Ensemble& e, Real gamma) {
    return build_generator(e, KernelKind::exp, gamma);
}

GeneratorMatrix assemble_td_direct(const Ensemble& e, KernelKind kind, Real gamma) {
    require_gamma(gamma);
    const PairGeometry g = pair_geometry(e);
    const Eigen::Index n = g.distance.rows();

    // Timed kernel exp(-i Kvec_ji) kernel(K_ji).
    ComplexMatrix timed(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            timed(j, i) = (j == i) ? self_coupling(gamma)
                                   : std::polar(1.0, -g.projection(j, i)) *
                                         pair_coupling(kind, g.distance(j, i), gamma);

    // row_prefix(j, y) = sum_{i<y} timed(j, i)
    ComplexMatrix row_prefix = ComplexMatrix::Zero(n, n + 1);
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) row_prefix(j, i + 1) = row_prefix(j, i) + timed(j, i);

    // col_prefix(x, i) = sum_{j<x} timed(j, i)
    ComplexMatrix col_prefix = ComplexMatrix::Zero(n + 1, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) col_prefix(j + 1, i) = col_prefix(j, i) + timed(j, i);

    // block(x, y) = sum_{j<x, i<y} timed(j, i)
    ComplexMatrix block = ComplexMatrix::Zero(n + 1, n + 1);
#pragma omp parallel for schedule(static)
    for (Eigen::Index y = 0; y <= n; ++y)
        for (Eigen::Index j = 0; j < n; ++j) block(j + 1, y) = block(j, y) + row_prefix(j, y);

    ComplexMatrix td(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index p = 0; p < n; ++p) {
        const LadderWeights a = ladder_weights(p, n);
        for (Eigen::Index q = 0; q < n; ++q) {
            const LadderWeights b = ladder_weights(q, n);
            Complex v = a.bulk_weight * b.bulk_weight * block(a.bulk, b.bulk);
            if (b.tail >= 0) v += a.bulk_weight * b.tail_weight * col_prefix(a.bulk, b.tail);
            if (a.tail >= 0) v += a.tail_weight * b.bulk_weight * row_prefix(a.tail, b.bulk);
            if (a.tail >= 0 && b.tail >= 0) v += a.tail_weight * b.tail_weight * timed(a.tail, b.tail);
            td(p, q) = v;
        }
    }
    return {std::move(td), Basis::td, kind, gamma};
}

namespace serial {

GeneratorMatrix build_generator(const Ensemble& e, KernelKind kind, Real gamma) {
    require_gamma(gamma);
    const PairGeometry g = serial::pair_geometry(e);
    const Eigen::Index n = g.distance.rows();
    ComplexMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            m(j, i) = (j == i) ? self_coupling(gamma) : pair_coupling(kind, g.distance(j, i), gamma);
    return {std::move(m), Basis::fock, kind, gamma};
}

GeneratorMatrix assemble_td_direct(const Ensemble& e, KernelKind kind, Real gamma) {
    require_gamma(gamma);
    const PairGeometry g = serial::pair_geometry(e);
    const Eigen::Index n = g.distance.rows();

    std::vector<std::vector<Real>> weights(static_cast<std::size_t>(n),
                                           std::vector<Real>(static_cast<std::size_t>(n), 0.0));
    for (Eigen::Index p = 0; p < n; ++p) {
        const LadderWeights w = ladder_weights(p, n);
        auto& row = weights[static_cast<std::size_t>(p)];
        for (Eigen::Index j = 0; j < w.bulk; ++j) row[static_cast<std::size_t>(j)] = w.bulk_weight;
        if (w.tail >= 0) row[static_cast<std::size_t>(w.tail)] = w.tail_weight;
    }

    ComplexMatrix td(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = 0; q < n; ++q) {
            Complex sum{0.0, 0.0};
            for (Eigen::Index j = 0; j < n; ++j) {
                const Real cj = weights[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
                if (cj == 0.0) continue;
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Real ci = weights[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)];
                    if (ci == 0.0) continue;
                    const Complex k = (j == i) ? self_coupling(gamma)
                                               : pair_coupling(kind, g.distance(j, i), gamma);
                    sum += cj * ci * std::exp(-kI * g.projection(j, i)) * k;
                }
            }
            td(p, q) = sum;
        }
    }
    return {std::move(td), Basis::td, kind, gamma};
}

} // namespace serial

} // namespace tdicke
