#ifndef TDICKE_OBSERVABLES_HPP
#define TDICKE_OBSERVABLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "tdicke/dynamics.hpp"
#include "tdicke/ensemble.hpp"

namespace tdicke {

struct ObservableSeries {
    std::vector<Real> times;
    std::vector<Real> values;
    std::string label;
};

/// TD indices are 1-based: 1 is |+>, m >= 2 is the ladder state |m>.
std::string td_label(int index);

std::vector<ObservableSeries> populations(const Trajectory& traj, const std::vector<int>& indices);
ObservableSeries population(const Trajectory& traj, int index);

/// sum_j |beta_j|^2; basis independent.
ObservableSeries total_excitation(const Trajectory& traj);

/// |<psi0|beta(t)>|^2 for a reference state in the trajectory's basis.
ObservableSeries survival(const Trajectory& traj, const AmplitudeState& reference);

/// Population of `target` for a trajectory that starts in the pure TD state
/// `source`.
ObservableSeries fa_transfer(const Trajectory& traj, int source, int target);

enum class OverlapFrom { plus, minus };

/// |<from| (sum_{j<n} e^{i k0.r_j}/n |j> - e^{i k0.r_n} |n>)|, evaluated
/// literally with atoms 1..n in ensemble order.
Real static_overlap(const Ensemble& e, OverlapFrom from, int n_target);

/// First time the series drops below threshold, linearly interpolated.
/// Returns nullopt when it never does.
std::optional<Real> decay_time(const ObservableSeries& series, Real threshold);

/// Amplitude decay rate -0.5 d ln(series)/dt from a least-squares line over
/// samples with t <= t_end.
Real fitted_decay_rate(const ObservableSeries& series, Real t_end);

} // namespace tdicke

#endif // TDICKE_OBSERVABLES_HPP
