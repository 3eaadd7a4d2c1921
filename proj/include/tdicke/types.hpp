#ifndef TDICKE_TYPES_HPP
#define TDICKE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tdicke {

using Real = double;
using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class Basis { fock, td };
enum class KernelKind { sine, exp };

const char* to_string(Basis b);
const char* to_string(KernelKind k);

enum class ErrorCode {
    invalid_argument,
    infeasible_count,
    invalid_state,
    dimension_mismatch,
    basis_mismatch,
    degenerate_spectrum,
    range_error,
    invalid_precondition,
    usage,
    io,
};

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a diagnostic without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tdicke

#endif // TDICKE_TYPES_HPP
