#ifndef TDICKE_ENSEMBLE_HPP
#define TDICKE_ENSEMBLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "tdicke/types.hpp"

namespace tdicke {

/**
 * Atomic ensemble: positions in units of 1/k0, the driving wavevector and an
 * optional section label per atom. Immutable once constructed.
 *
 * Atom order is significant. Ladder states |m> are built on the first m atoms
 * in this order, so constructors document the order they produce.
 */
class Ensemble {
public:
    Ensemble(std::vector<Vec3> positions, Vec3 k0_vec,
             std::optional<std::vector<int>> sections = std::nullopt);

    std::size_t size() const noexcept { return positions_.size(); }
    const std::vector<Vec3>& positions() const noexcept { return positions_; }
    const Vec3& position(std::size_t j) const { return positions_.at(j); }
    const Vec3& k0_vec() const noexcept { return k0_vec_; }
    Real k0() const noexcept { return k0_vec_.norm(); }

    /// k0_vec . r_j, the timing phase of atom j.
    Real phase(std::size_t j) const { return k0_vec_.dot(positions_.at(j)); }

    bool has_sections() const noexcept { return sections_.has_value(); }
    const std::vector<int>& sections() const;
    int section_count() const noexcept { return section_count_; }

    Ensemble with_sections(std::vector<int> sections) const;

private:
    std::vector<Vec3> positions_;
    Vec3 k0_vec_;
    std::optional<std::vector<int>> sections_;
    int section_count_ = 0;
};

/// K_ji = k0 |r_j - r_i| (symmetric, zero diagonal) and
/// Kvec_ji = k0_vec . (r_j - r_i) (antisymmetric).
struct PairGeometry {
    RealMatrix distance;
    RealMatrix projection;
};

PairGeometry pair_geometry(const Ensemble& e);

/// n atoms at j * spacing along x, j = 0..n-1.
Ensemble build_line(long n, Real spacing, const Vec3& k0_vec);

/// Cubic lattice points spacing*(i,j,k) with |p| <= radius, in lexicographic
/// (i,j,k) order. With target_count, the farthest points are removed until
/// the count matches; among equally far points the lexicographically smallest
/// goes first.
Ensemble build_sphere_lattice(Real radius, Real spacing, const Vec3& k0_vec,
                              std::optional<long> target_count = std::nullopt);

/// Splits atoms into m contiguous groups along k0_vec (larger groups first).
Ensemble partition_sections(const Ensemble& e, int m);

namespace serial {
PairGeometry pair_geometry(const Ensemble& e);
}

} // namespace tdicke

#endif // TDICKE_ENSEMBLE_HPP
