#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "photonlab/types.hpp"

namespace support {

using photonlab::cplx;
using photonlab::CVec3;
using photonlab::Vec3;

inline double max_abs(const CVec3& v) { return v.cwiseAbs().maxCoeff(); }

inline std::mt19937_64 rng(unsigned long seed) { return std::mt19937_64(seed); }

inline Vec3 random_vec(std::mt19937_64& g, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(g), u(g), u(g)};
}

inline double rel(double value, double oracle) { return std::abs(value - oracle) / std::abs(oracle); }

}  // namespace support
