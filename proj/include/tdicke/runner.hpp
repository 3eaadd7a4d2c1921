#ifndef TDICKE_RUNNER_HPP
#define TDICKE_RUNNER_HPP

#include <string>
#include <vector>

#include "tdicke/basis.hpp"
#include "tdicke/config.hpp"
#include "tdicke/dynamics.hpp"
#include "tdicke/ensemble.hpp"
#include "tdicke/observables.hpp"

namespace tdicke {

/// Geometry described by the config, partitioned when the initial state or
/// the `sections` key asks for it.
Ensemble build_ensemble(const RunConfig& cfg);

/// One config per (kernel, initial state) pair with the solver, section count
/// and output path resolved. A single pair keeps the configured output path;
/// several get "<stem>_<kernel>_<init><ext>".
std::vector<RunConfig> expand_runs(const RunConfig& cfg);

struct Scenario {
    Ensemble ensemble;
    GeneratorMatrix generator;  // TD basis
    AmplitudeState initial;     // TD basis
    Trajectory trajectory;      // TD basis
    std::vector<int> tracked;
    std::vector<ObservableSeries> columns;  // tracked populations, total, [survival]
};

/// Runs one expanded config without touching the filesystem.
Scenario simulate(const RunConfig& single);

/// Writes one CSV per expanded run and returns the paths.
std::vector<std::string> run(const RunConfig& cfg);

/// Eigenvalues of the TD-basis generator, sorted by (real, imaginary) part.
ComplexVector td_spectrum(const Ensemble& e, KernelKind kind, Real gamma);

/// Writes "<stem>_spectrum<ext>" (or "<stem>_spectrum_<kernel><ext>" for
/// several kernels) and returns the paths.
std::vector<std::string> spectrum(const RunConfig& cfg);

struct CsvTable {
    std::vector<std::string> preamble;
    std::vector<std::string> header;
    std::vector<std::vector<Real>> rows;
};

void write_csv(const std::string& path, const KeyValues& echo, const std::vector<std::string>& header,
               const std::vector<std::vector<Real>>& columns, const std::string& title);
CsvTable read_csv(const std::string& path);

} // namespace tdicke

#endif // TDICKE_RUNNER_HPP
