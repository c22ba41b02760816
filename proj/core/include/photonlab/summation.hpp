#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "photonlab/types.hpp"

namespace photonlab {

/// Pairwise (cascade) summation; error grows as O(log n) rather than O(n).
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

/// Pairwise sum of term(i) for i in [0, n) without materializing the terms.
double pairwise_sum(std::size_t n, const std::function<double(std::size_t)>& term);
cplx pairwise_sum_complex(std::size_t n, const std::function<cplx(std::size_t)>& term);

}  // namespace photonlab
