#include "tdicke/observables.hpp"

#include <cmath>

#include "tdicke/basis.hpp"

namespace tdicke {

namespace {

void require_td(const Trajectory& traj, const char* what) {
    if (traj.basis != Basis::td)
        throw Error(ErrorCode::basis_mismatch, std::string(what) + " needs a TD-basis trajectory");
}

void require_index(const Trajectory& traj, int index) {
    if (index < 1 || index > traj.amplitudes.rows())
        throw Error(ErrorCode::invalid_argument,
                    "TD index " + std::to_string(index) + " outside 1.." +
                        std::to_string(traj.amplitudes.rows()));
}

} // namespace

std::string td_label(int index) {
    return index == 1 ? "population:+" : "population:m=" + std::to_string(index);
}

ObservableSeries population(const Trajectory& traj, int index) {
    require_td(traj, "populations");
    require_index(traj, index);
    ObservableSeries s{traj.times, {}, td_label(index)};
    s.values.reserve(traj.times.size());
    for (Eigen::Index k = 0; k < traj.amplitudes.cols(); ++k)
        s.values.push_back(std::norm(traj.amplitudes(index - 1, k)));
    return s;
}

std::vector<ObservableSeries> populations(const Trajectory& traj, const std::vector<int>& indices) {
    std::vector<ObservableSeries> out;
    out.reserve(indices.size());
    for (int index : indices) out.push_back(population(traj, index));
    return out;
}

ObservableSeries total_excitation(const Trajectory& traj) {
    ObservableSeries s{traj.times, {}, "total"};
    s.values.reserve(traj.times.size());
    for (Eigen::Index k = 0; k < traj.amplitudes.cols(); ++k)
        s.values.push_back(traj.amplitudes.col(k).squaredNorm());
    return s;
}

ObservableSeries survival(const Trajectory& traj, const AmplitudeState& reference) {
    if (reference.basis != traj.basis)
        throw Error(ErrorCode::basis_mismatch, "survival: reference state basis differs");
    if (reference.size() != traj.amplitudes.rows())
        throw Error(ErrorCode::dimension_mismatch, "survival: reference state size differs");
    ObservableSeries s{traj.times, {}, "survival"};
    s.values.reserve(traj.times.size());
    for (Eigen::Index k = 0; k < traj.amplitudes.cols(); ++k)
        s.values.push_back(std::norm(reference.amplitudes.dot(traj.amplitudes.col(k))));
    return s;
}

ObservableSeries fa_transfer(const Trajectory& traj, int source, int target) {
    require_td(traj, "fa_transfer");
    require_index(traj, source);
    require_index(traj, target);
    if (traj.amplitudes.cols() == 0 || std::norm(traj.amplitudes(source - 1, 0)) < 1.0 - 1e-9)
        throw Error(ErrorCode::invalid_precondition,
                    "fa_transfer: trajectory does not start in pure TD state " +
                        std::to_string(source));
    ObservableSeries s = population(traj, target);
    s.label = "transfer:" + std::to_string(source) + "->" + std::to_string(target);
    return s;
}

Real static_overlap(const Ensemble& e, OverlapFrom from, int n_target) {
    const auto n = static_cast<int>(e.size());
    if (n_target < 2 || n_target > n)
        throw Error(ErrorCode::invalid_argument,
                    "static_overlap: target " + std::to_string(n_target) + " outside 2.." +
                        std::to_string(n));

    ComplexVector probe = ComplexVector::Zero(n);
    const Real spread = 1.0 / static_cast<Real>(n_target);
    for (int j = 0; j < n_target - 1; ++j)
        probe(j) = spread * std::polar(1.0, e.phase(static_cast<std::size_t>(j)));
    probe(n_target - 1) = -std::polar(1.0, e.phase(static_cast<std::size_t>(n_target - 1)));

    const AmplitudeState bra = from == OverlapFrom::plus ? plus_state(e) : ladder_state(e, 2);
    return std::abs(bra.amplitudes.dot(probe));
}

std::optional<Real> decay_time(const ObservableSeries& series, Real threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error(ErrorCode::invalid_argument, "decay_time: threshold must lie in (0, 1)");
    if (series.values.empty() || !(series.values.front() > threshold))
        throw Error(ErrorCode::invalid_precondition,
                    "decay_time: series must start above the threshold");
    for (std::size_t k = 1; k < series.values.size(); ++k) {
        const Real y1 = series.values[k];
        if (y1 < threshold) {
            const Real y0 = series.values[k - 1];
            const Real t0 = series.times[k - 1];
            const Real t1 = series.times[k];
            return t0 + (y0 - threshold) / (y0 - y1) * (t1 - t0);
        }
    }
    return std::nullopt;
}

Real fitted_decay_rate(const ObservableSeries& series, Real t_end) {
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t k = 0; k < series.times.size() && series.times[k] <= t_end + 1e-12; ++k) {
        if (!(series.values[k] > 0.0))
            throw Error(ErrorCode::range_error, "fitted_decay_rate: non-positive sample");
        const Real x = series.times[k];
        const Real y = std::log(series.values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw Error(ErrorCode::invalid_argument, "fitted_decay_rate: need two samples");
    const Real slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return -0.5 * slope;
}

} // namespace tdicke
