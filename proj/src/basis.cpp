#include "tdicke/basis.hpp"

#include <cmath>
#include <string>

namespace tdicke {

namespace {

Complex timing_factor(const Ensemble& e, std::size_t j) {
    return std::polar(1.0, e.phase(j));
}

void require_size(Eigen::Index expected, Eigen::Index got, const char* what) {
    if (expected != got)
        throw Error(ErrorCode::dimension_mismatch,
                    std::string(what) + ": dimension " + std::to_string(got) + ", expected " +
                        std::to_string(expected));
}

} // namespace

AmplitudeState plus_state(const Ensemble& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    const Real norm = 1.0 / std::sqrt(static_cast<Real>(n));
    ComplexVector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v(j) = norm * timing_factor(e, static_cast<std::size_t>(j));
    return {std::move(v), Basis::fock};
}

AmplitudeState ladder_state(const Ensemble& e, int m) {
    const auto n = static_cast<Eigen::Index>(e.size());
    if (m < 2 || m > n)
        throw Error(ErrorCode::invalid_argument,
                    "ladder state index " + std::to_string(m) + " outside 2.." + std::to_string(n));
    const Real norm = 1.0 / std::sqrt(static_cast<Real>(m) * static_cast<Real>(m - 1));
    ComplexVector v = ComplexVector::Zero(n);
    for (int j = 0; j < m - 1; ++j) v(j) = norm * timing_factor(e, static_cast<std::size_t>(j));
    v(m - 1) = -static_cast<Real>(m - 1) * norm * timing_factor(e, static_cast<std::size_t>(m - 1));
    return {std::move(v), Basis::fock};
}

AmplitudeState section_state(const Ensemble& e, int m) {
    if (!e.has_sections())
        throw Error(ErrorCode::invalid_state, "section state requires a sectioned ensemble");
    if (m < 2 || m > e.section_count())
        throw Error(ErrorCode::invalid_argument,
                    "section state index " + std::to_string(m) + " outside 2.." +
                        std::to_string(e.section_count()));

    const auto& labels = e.sections();
    std::vector<Real> section_size(static_cast<std::size_t>(e.section_count()), 0.0);
    for (int s : labels) section_size[static_cast<std::size_t>(s)] += 1.0;

    const Real norm = 1.0 / std::sqrt(static_cast<Real>(m) * static_cast<Real>(m - 1));
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(e.size()));
    for (std::size_t j = 0; j < e.size(); ++j) {
        const int s = labels[j];
        if (s >= m) continue;
        const Real weight = (s < m - 1) ? 1.0 : -static_cast<Real>(m - 1);
        v(static_cast<Eigen::Index>(j)) = norm * weight /
                                          std::sqrt(section_size[static_cast<std::size_t>(s)]) *
                                          timing_factor(e, j);
    }
    return {std::move(v), Basis::fock};
}

TDTransform build_transform(const Ensemble& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    ComplexVector conj_phase(n);
    for (Eigen::Index j = 0; j < n; ++j)
        conj_phase(j) = std::conj(timing_factor(e, static_cast<std::size_t>(j)));

    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    s.row(0) = conj_phase.transpose() / std::sqrt(static_cast<Real>(n));

#pragma omp parallel for schedule(static)
    for (Eigen::Index m = 2; m <= n; ++m) {
        const Real norm = 1.0 / std::sqrt(static_cast<Real>(m) * static_cast<Real>(m - 1));
        for (Eigen::Index j = 0; j < m - 1; ++j) s(m - 1, j) = norm * conj_phase(j);
        s(m - 1, m - 1) = -static_cast<Real>(m - 1) * norm * conj_phase(m - 1);
    }
    return {std::move(s)};
}

GeneratorMatrix transform_generator(const TDTransform& s, const GeneratorMatrix& m) {
    if (m.basis != Basis::fock)
        throw Error(ErrorCode::basis_mismatch, "transform_generator expects a Fock-basis generator");
    require_size(s.size(), m.size(), "transform_generator");
    ComplexMatrix tmp = s.matrix * m.entries;
    ComplexMatrix td = tmp * s.matrix.adjoint();
    return {std::move(td), Basis::td, m.kernel, m.gamma};
}

AmplitudeState to_td(const TDTransform& s, const AmplitudeState& fock) {
    if (fock.basis != Basis::fock)
        throw Error(ErrorCode::basis_mismatch, "to_td expects a Fock-basis state");
    require_size(s.size(), fock.size(), "to_td");
    return {s.matrix * fock.amplitudes, Basis::td};
}

AmplitudeState to_fock(const TDTransform& s, const AmplitudeState& td) {
    if (td.basis != Basis::td)
        throw Error(ErrorCode::basis_mismatch, "to_fock expects a TD-basis state");
    require_size(s.size(), td.size(), "to_fock");
    return {s.matrix.adjoint() * td.amplitudes, Basis::fock};
}

} // namespace tdicke
