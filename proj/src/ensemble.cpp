#include "tdicke/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

namespace tdicke {

const char* to_string(Basis b) { return b == Basis::fock ? "fock" : "td"; }
const char* to_string(KernelKind k) { return k == KernelKind::sine ? "sine" : "exp"; }

namespace {

int validate_sections(const std::vector<int>& sections, std::size_t n) {
    if (sections.size() != n)
        throw Error(ErrorCode::invalid_argument,
                    "section labels: expected " + std::to_string(n) + ", got " +
                        std::to_string(sections.size()));
    const int m = *std::max_element(sections.begin(), sections.end()) + 1;
    std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(m, 0)), 0);
    for (int s : sections) {
        if (s < 0) throw Error(ErrorCode::invalid_argument, "negative section label");
        ++sizes[static_cast<std::size_t>(s)];
    }
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    if (*lo == 0) throw Error(ErrorCode::invalid_argument, "empty section");
    if (*hi - *lo > 1)
        throw Error(ErrorCode::invalid_argument, "section sizes differ by more than one");
    return m;
}

} // namespace

Ensemble::Ensemble(std::vector<Vec3> positions, Vec3 k0_vec,
                   std::optional<std::vector<int>> sections)
    : positions_(std::move(positions)), k0_vec_(std::move(k0_vec)) {
    if (positions_.empty())
        throw Error(ErrorCode::invalid_argument, "ensemble needs at least one atom");
    if (!(k0_vec_.norm() > 0.0) || !k0_vec_.allFinite())
        throw Error(ErrorCode::invalid_argument, "|k0_vec| must be positive and finite");
    for (const auto& p : positions_)
        if (!p.allFinite()) throw Error(ErrorCode::invalid_argument, "non-finite position");

    const std::size_t n = positions_.size();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = j + 1; i < n; ++i)
            if (!((positions_[j] - positions_[i]).squaredNorm() > 0.0))
                throw Error(ErrorCode::invalid_argument,
                            "atoms " + std::to_string(j) + " and " + std::to_string(i) +
                                " coincide");

    if (sections) {
        section_count_ = validate_sections(*sections, n);
        sections_ = std::move(sections);
    }
}

const std::vector<int>& Ensemble::sections() const {
    if (!sections_) throw Error(ErrorCode::invalid_state, "ensemble has no sections");
    return *sections_;
}

Ensemble Ensemble::with_sections(std::vector<int> sections) const {
    return Ensemble(positions_, k0_vec_, std::move(sections));
}

PairGeometry pair_geometry(const Ensemble& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    const auto& r = e.positions();
    const Vec3& k = e.k0_vec();
    const Real k0 = e.k0();
    PairGeometry g{RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};

#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const Vec3 d = r[static_cast<std::size_t>(j)] - r[static_cast<std::size_t>(i)];
            const Real dist = k0 * d.norm();
            const Real proj = k.dot(d);
            g.distance(j, i) = dist;
            g.distance(i, j) = dist;
            g.projection(j, i) = proj;
            g.projection(i, j) = -proj;
        }
    }
    return g;
}

namespace serial {

PairGeometry pair_geometry(const Ensemble& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    PairGeometry g{RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const Vec3 d = e.position(static_cast<std::size_t>(j)) -
                           e.position(static_cast<std::size_t>(i));
            g.distance(j, i) = g.distance(i, j) = e.k0() * d.norm();
            g.projection(j, i) = e.k0_vec().dot(d);
            g.projection(i, j) = -g.projection(j, i);
        }
    }
    return g;
}

} // namespace serial

Ensemble build_line(long n, Real spacing, const Vec3& k0_vec) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "line: n must be >= 1");
    if (!(spacing > 0.0)) throw Error(ErrorCode::invalid_argument, "line: spacing must be > 0");
    std::vector<Vec3> pos;
    pos.reserve(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) pos.emplace_back(static_cast<Real>(j) * spacing, 0.0, 0.0);
    return Ensemble(std::move(pos), k0_vec);
}

Ensemble build_sphere_lattice(Real radius, Real spacing, const Vec3& k0_vec,
                              std::optional<long> target_count) {
    if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "sphere: radius must be > 0");
    if (!(spacing > 0.0)) throw Error(ErrorCode::invalid_argument, "sphere: spacing must be > 0");

    using Index3 = std::tuple<long, long, long>;
    const Real ratio = radius / spacing;
    // Relative slack so points lying exactly on the surface are kept.
    const Real limit = ratio * ratio * (1.0 + 1e-12);
    const long reach = static_cast<long>(std::floor(ratio)) + 1;

    std::vector<Index3> cells;
    for (long i = -reach; i <= reach; ++i)
        for (long j = -reach; j <= reach; ++j)
            for (long k = -reach; k <= reach; ++k)
                if (static_cast<Real>(i * i + j * j + k * k) <= limit) cells.emplace_back(i, j, k);

    auto norm2 = [](const Index3& c) {
        const auto [i, j, k] = c;
        return i * i + j * j + k * k;
    };

    if (target_count) {
        if (*target_count < 1)
            throw Error(ErrorCode::invalid_argument, "sphere: target_count must be >= 1");
        const auto want = static_cast<std::size_t>(*target_count);
        if (want > cells.size())
            throw Error(ErrorCode::infeasible_count,
                        "sphere: target_count " + std::to_string(want) + " exceeds the " +
                            std::to_string(cells.size()) + " available lattice points");
        std::vector<Index3> by_distance = cells;
        std::stable_sort(by_distance.begin(), by_distance.end(),
                         [&](const Index3& a, const Index3& b) { return norm2(a) > norm2(b); });
        std::vector<Index3> dropped(by_distance.begin(),
                                    by_distance.begin() +
                                        static_cast<std::ptrdiff_t>(cells.size() - want));
        std::sort(dropped.begin(), dropped.end());
        std::erase_if(cells, [&](const Index3& c) {
            return std::binary_search(dropped.begin(), dropped.end(), c);
        });
    }

    std::vector<Vec3> pos;
    pos.reserve(cells.size());
    for (const auto& [i, j, k] : cells)
        pos.emplace_back(spacing * static_cast<Real>(i), spacing * static_cast<Real>(j),
                         spacing * static_cast<Real>(k));
    return Ensemble(std::move(pos), k0_vec);
}

Ensemble partition_sections(const Ensemble& e, int m) {
    const std::size_t n = e.size();
    if (m < 1 || static_cast<std::size_t>(m) > n)
        throw Error(ErrorCode::invalid_argument,
                    "partition: need 1 <= m <= N, got m=" + std::to_string(m));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t a) {
        const Vec3& p = e.position(a);
        return std::make_tuple(e.phase(a), p.x(), p.y(), p.z());
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    const std::size_t groups = static_cast<std::size_t>(m);
    const std::size_t base = n / groups;
    const std::size_t extra = n % groups;
    std::vector<int> labels(n, 0);
    std::size_t cursor = 0;
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t size = base + (g < extra ? 1 : 0);
        for (std::size_t q = 0; q < size; ++q) labels[order[cursor++]] = static_cast<int>(g);
    }
    return e.with_sections(std::move(labels));
}

} // namespace tdicke
