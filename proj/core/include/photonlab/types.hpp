#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace photonlab {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Extent3 = std::array<std::size_t, 3>;

/// Three complex components on a flat grid (x, y, z component arrays).
using ComplexField3 = std::array<std::vector<cplx>, 3>;
using RealField3 = std::array<std::vector<double>, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// All library failures surface as this exception; the message names the
/// failing condition ("unnormalizable", "truncation overflow", ...).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain a x b for complex vectors (Eigen's cross conjugates complex results).
inline CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline std::size_t extent_size(const Extent3& n) { return n[0] * n[1] * n[2]; }

/// Row-major flat index with z fastest, matching FFTW's 3D layout.
inline std::size_t flat_index(const Extent3& n, std::size_t i, std::size_t j, std::size_t l) {
    return (i * n[1] + j) * n[2] + l;
}

inline std::array<std::size_t, 3> unflatten(const Extent3& n, std::size_t flat) {
    const std::size_t l = flat % n[2];
    const std::size_t rest = flat / n[2];
    return {rest / n[1], rest % n[1], l};
}

}  // namespace photonlab
