#ifndef TDICKE_STATE_HPP
#define TDICKE_STATE_HPP

#include "tdicke/types.hpp"

namespace tdicke {

/// Single-excitation amplitudes at one instant, tagged with their basis.
struct AmplitudeState {
    ComplexVector amplitudes;
    Basis basis = Basis::fock;

    Eigen::Index size() const noexcept { return amplitudes.size(); }
    Real norm2() const { return amplitudes.squaredNorm(); }
};

/// Effective generator M of d(beta)/dt = M beta.
struct GeneratorMatrix {
    ComplexMatrix entries;
    Basis basis = Basis::fock;
    KernelKind kernel = KernelKind::sine;
    Real gamma = 1.0;

    Eigen::Index size() const noexcept { return entries.rows(); }
};

} // namespace tdicke

#endif // TDICKE_STATE_HPP
