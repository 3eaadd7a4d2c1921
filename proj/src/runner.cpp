#include "tdicke/runner.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tdicke/kernel.hpp"

namespace tdicke {

namespace {

constexpr long kEigenSolverLimit = 500;

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const std::filesystem::path p(path);
    const std::filesystem::path stem = p.parent_path() / p.stem();
    return stem.string() + suffix + p.extension().string();
}

std::vector<int> tracked_indices(const RunConfig& cfg, long n) {
    std::vector<int> out;
    if (!cfg.tracked) {
        out.resize(static_cast<std::size_t>(n));
        std::iota(out.begin(), out.end(), 1);
        return out;
    }
    for (int index : *cfg.tracked) {
        if (index > n)
            throw Error(ErrorCode::usage, "config key 'tracked': TD index " + std::to_string(index) +
                                              " exceeds N=" + std::to_string(n));
        out.push_back(index);
    }
    return out;
}

std::string column_name(int index) {
    return index == 1 ? "pop_plus" : "pop_" + std::to_string(index);
}

AmplitudeState initial_fock_state(const Ensemble& e, const InitSpec& init) {
    switch (init.kind) {
    case InitSpec::Kind::plus: return plus_state(e);
    case InitSpec::Kind::ladder: return ladder_state(e, init.index);
    case InitSpec::Kind::section: return section_state(e, init.index);
    }
    throw Error(ErrorCode::invalid_argument, "unknown initial state");
}

} // namespace

Ensemble build_ensemble(const RunConfig& cfg) {
    Ensemble e = cfg.geometry == Geometry::line
                     ? build_line(cfg.n, cfg.spacing, cfg.k0_vec)
                     : build_sphere_lattice(cfg.radius, cfg.spacing, cfg.k0_vec, cfg.target_count);
    int sections = cfg.sections.value_or(0);
    if (!cfg.sections)
        for (const auto& init : cfg.inits)
            if (init.kind == InitSpec::Kind::section) sections = std::max(sections, init.index);
    if (sections > 0) e = partition_sections(e, sections);
    return e;
}

std::vector<RunConfig> expand_runs(const RunConfig& cfg) {
    validate(cfg);
    std::vector<RunConfig> runs;
    const bool several = cfg.kernels.size() * cfg.inits.size() > 1;
    for (KernelKind kernel : cfg.kernels) {
        for (const InitSpec& init : cfg.inits) {
            RunConfig single = cfg;
            single.kernels = {kernel};
            single.inits = {init};
            if (!single.sections && init.kind == InitSpec::Kind::section) single.sections = init.index;
            if (several)
                single.output = with_suffix(cfg.output, std::string("_") + to_string(kernel) + "_" +
                                                            init.file_tag());
            runs.push_back(std::move(single));
        }
    }
    if (cfg.solver == SolverChoice::automatic) {
        const auto n = static_cast<long>(build_ensemble(runs.front()).size());
        for (auto& r : runs)
            r.solver = n <= kEigenSolverLimit ? SolverChoice::eigen : SolverChoice::rk4;
    }
    return runs;
}

Scenario simulate(const RunConfig& single) {
    if (single.kernels.size() != 1 || single.inits.size() != 1)
        throw Error(ErrorCode::usage, "simulate expects a single kernel and initial state");
    Ensemble e = build_ensemble(single);
    const KernelKind kind = single.kernels.front();
    const InitSpec& init = single.inits.front();
    const auto n = static_cast<long>(e.size());
    if (init.kind == InitSpec::Kind::ladder && init.index > n)
        throw Error(ErrorCode::usage, "config key 'init': " + init.text() + " exceeds N=" +
                                          std::to_string(n));

    const TDTransform s = build_transform(e);
    GeneratorMatrix td = transform_generator(s, build_generator(e, kind, single.gamma));
    const AmplitudeState psi0 = to_td(s, initial_fock_state(e, init));
    std::vector<int> tracked = tracked_indices(single, n);

    Trajectory traj;
    const SolverChoice solver = single.solver == SolverChoice::automatic
                                    ? (n <= kEigenSolverLimit ? SolverChoice::eigen : SolverChoice::rk4)
                                    : single.solver;
    if (solver == SolverChoice::rk4) {
        traj = rk4_propagate(td, psi0, single.dt, single.t_max, single.stride);
    } else {
        const std::vector<Real> grid = time_grid(single.dt, single.t_max, single.stride);
        traj = eigen_solve(td, psi0, grid);
        traj.dt = single.dt;
    }

    std::vector<ObservableSeries> columns = populations(traj, tracked);
    columns.push_back(total_excitation(traj));
    if (init.kind == InitSpec::Kind::section) columns.push_back(survival(traj, psi0));

    return {std::move(e), std::move(td), psi0, std::move(traj), std::move(tracked),
            std::move(columns)};
}

std::vector<std::string> run(const RunConfig& cfg) {
    std::vector<std::string> written;
    for (const RunConfig& single : expand_runs(cfg)) {
        const Scenario sc = simulate(single);
        std::vector<std::string> header{"t"};
        std::vector<std::vector<Real>> columns{sc.trajectory.times};
        for (std::size_t k = 0; k < sc.tracked.size(); ++k) header.push_back(column_name(sc.tracked[k]));
        for (std::size_t k = sc.tracked.size(); k < sc.columns.size(); ++k)
            header.push_back(sc.columns[k].label);
        for (const auto& series : sc.columns) columns.push_back(series.values);
        write_csv(single.output, echo_config(single), header, columns, "trajectory");
        written.push_back(single.output);
    }
    return written;
}

ComplexVector td_spectrum(const Ensemble& e, KernelKind kind, Real gamma) {
    const GeneratorMatrix td = transform_generator(build_transform(e), build_generator(e, kind, gamma));
    ComplexVector values;
    if (kind == KernelKind::sine) {
        // S M S^dagger of a real symmetric M is Hermitian.
        const ComplexMatrix h = 0.5 * (td.entries + td.entries.adjoint());
        values = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly)
                     .eigenvalues()
                     .cast<Complex>();
    } else {
        Eigen::ComplexEigenSolver<ComplexMatrix> es(td.entries, false);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::degenerate_spectrum, "spectrum: eigen solver did not converge");
        values = es.eigenvalues();
    }
    std::vector<Complex> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return Eigen::Map<ComplexVector>(sorted.data(), static_cast<Eigen::Index>(sorted.size()));
}

std::vector<std::string> spectrum(const RunConfig& cfg) {
    validate(cfg);
    const Ensemble e = build_ensemble(cfg);
    std::vector<std::string> written;
    for (KernelKind kind : cfg.kernels) {
        const ComplexVector ev = td_spectrum(e, kind, cfg.gamma);
        const std::string path =
            with_suffix(cfg.output, cfg.kernels.size() > 1
                                        ? std::string("_spectrum_") + to_string(kind)
                                        : std::string("_spectrum"));
        RunConfig single = cfg;
        single.kernels = {kind};
        std::vector<Real> index, re, im;
        for (Eigen::Index k = 0; k < ev.size(); ++k) {
            index.push_back(static_cast<Real>(k));
            re.push_back(ev(k).real());
            im.push_back(ev(k).imag());
        }
        write_csv(path, echo_config(single), {"index", "re", "im"}, {index, re, im}, "spectrum");
        written.push_back(path);
    }
    return written;
}

void write_csv(const std::string& path, const KeyValues& echo, const std::vector<std::string>& header,
               const std::vector<std::vector<Real>>& columns, const std::string& title) {
    std::string out = "# tdicke " + title + "\n";
    for (const auto& [k, v] : echo) out += "# config: " + k + " = " + v + "\n";
    for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
    out += "\n";
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_real(columns[c][r]);
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::io, "cannot write '" + path + "'");
    f << out;
    if (!f) throw Error(ErrorCode::io, "write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            table.preamble.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        std::vector<Real> row;
        for (const auto& c : cells) {
            Real v = 0.0;
            const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc{} || ptr != c.data() + c.size())
                throw Error(ErrorCode::io, "'" + path + "': bad number '" + c + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace tdicke
