#include "photonlab/summation.hpp"

namespace photonlab {
namespace {

constexpr std::size_t kLeaf = 64;

template <typename T, typename F>
T cascade(std::size_t begin, std::size_t end, const F& term) {
    if (end - begin <= kLeaf) {
        T acc{};
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    return cascade<T>(begin, mid, term) + cascade<T>(mid, end, term);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return cascade<double>(0, values.size(), [&](std::size_t i) { return values[i]; });
}

cplx pairwise_sum(std::span<const cplx> values) {
    return cascade<cplx>(0, values.size(), [&](std::size_t i) { return values[i]; });
}

double pairwise_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
    return cascade<double>(0, n, term);
}

cplx pairwise_sum_complex(std::size_t n, const std::function<cplx(std::size_t)>& term) {
    return cascade<cplx>(0, n, term);
}

}  // namespace photonlab
