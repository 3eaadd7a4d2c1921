#ifndef TDICKE_KERNEL_HPP
#define TDICKE_KERNEL_HPP

#include "tdicke/ensemble.hpp"
#include "tdicke/state.hpp"

namespace tdicke {

/// Fock-basis coupling between two distinct atoms at scaled distance k0 r.
///   sine: -gamma sin(k0 r)/(k0 r)
///   exp:  i gamma exp(i k0 r)/(k0 r)
Complex pair_coupling(KernelKind kind, Real scaled_distance, Real gamma);

/// Both kernels share the diagonal -gamma. For the exponential kernel the
/// divergent imaginary self term is absorbed into the transition frequency.
inline Complex self_coupling(Real gamma) { return {-gamma, 0.0}; }

GeneratorMatrix build_sine_generator(const Ensemble& e, Real gamma);
GeneratorMatrix build_exp_generator(const Ensemble& e, Real gamma);
GeneratorMatrix build_generator(const Ensemble& e, KernelKind kind, Real gamma);

/**
 * TD-basis generator assembled straight from the timed double sums
 *
 *   G_pq = sum_{j,i} c_p(j) c_q(i) exp(-i Kvec_ji) kernel(K_ji)
 *
 * where c_p are the real ladder weights of TD state p. Each ladder state is
 * a uniform block on its first atoms plus one tail atom, so every element
 * reduces to block sums of the timed kernel. Those are read off 2-D prefix
 * sums, giving O(N^2) work instead of the O(N^3) conjugation S M S^dagger.
 */
GeneratorMatrix assemble_td_direct(const Ensemble& e, KernelKind kind, Real gamma);

namespace serial {
GeneratorMatrix build_generator(const Ensemble& e, KernelKind kind, Real gamma);
/// Element-by-element double sums, O(N^4). Reference for small N only.
GeneratorMatrix assemble_td_direct(const Ensemble& e, KernelKind kind, Real gamma);
} // namespace serial

} // namespace tdicke

#endif // TDICKE_KERNEL_HPP
