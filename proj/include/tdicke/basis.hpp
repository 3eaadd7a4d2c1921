#ifndef TDICKE_BASIS_HPP
#define TDICKE_BASIS_HPP

#include "tdicke/ensemble.hpp"
#include "tdicke/state.hpp"

namespace tdicke {

/**
 * Unitary map from Fock to timed-Dicke amplitudes, beta_td = S beta_fock.
 *
 * Row 0 is the conjugate of |+>; row m-1 (m >= 2) is the conjugate of the
 * ladder state |m>, which lives on the first m atoms.
 */
struct TDTransform {
    ComplexMatrix matrix;

    Eigen::Index size() const noexcept { return matrix.rows(); }
};

/// Fock coefficients of |+>: exp(i k0.r_j) / sqrt(N).
AmplitudeState plus_state(const Ensemble& e);

/// Fock coefficients of the ladder state |m>, 2 <= m <= N.
AmplitudeState ladder_state(const Ensemble& e, int m);

/// [sum_{s<m} |+>_s - (m-1)|+>_m] / sqrt(m(m-1)) over section-symmetric
/// blocks; requires a sectioned ensemble with at least m sections.
AmplitudeState section_state(const Ensemble& e, int m);

TDTransform build_transform(const Ensemble& e);

/// S M S^dagger; M must be a Fock-basis generator of matching size.
GeneratorMatrix transform_generator(const TDTransform& s, const GeneratorMatrix& m);

AmplitudeState to_td(const TDTransform& s, const AmplitudeState& fock);
AmplitudeState to_fock(const TDTransform& s, const AmplitudeState& td);

} // namespace tdicke

#endif // TDICKE_BASIS_HPP
