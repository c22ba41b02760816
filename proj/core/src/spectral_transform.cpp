#include <mutex>

#include <fftw3.h>

#include "photonlab/field_synthesis.hpp"

namespace photonlab::field {
namespace {

// The FFTW planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct SpectralTransform::Plans {
    fftw_plan backward = nullptr;
    fftw_plan forward = nullptr;
};

SpectralTransform::SpectralTransform(const mode_space::WaveVectorGrid& kgrid, const SpatialGrid& xgrid)
    : kgrid_(kgrid), xgrid_(xgrid), plans_(new Plans) {
    if (!xgrid.fft_paired_with(kgrid)) {
        delete plans_;
        throw Error("spectral transform: grids are not FFT-paired");
    }
    const auto& n = kgrid.extent();
    for (int a = 0; a < 3; ++a) {
        pre_[a].resize(n[a]);
        post_[a].resize(n[a]);
        for (std::size_t m = 0; m < n[a]; ++m) {
            const double md = static_cast<double>(m);
            pre_[a][m] = std::polar(1.0, md * kgrid.delta_k()[a] * xgrid.origin()[a]);
            const double xj = xgrid.origin()[a] + md * xgrid.delta_x()[a];
            post_[a][m] = std::polar(1.0, kgrid.k_min()[a] * xj);
        }
    }
    std::vector<cplx> in(kgrid.size()), out(kgrid.size());
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int n0 = static_cast<int>(n[0]), n1 = static_cast<int>(n[1]), n2 = static_cast<int>(n[2]);
    plans_->backward = fftw_plan_dft_3d(n0, n1, n2, as_fftw(in.data()), as_fftw(out.data()), FFTW_BACKWARD, flags);
    plans_->forward = fftw_plan_dft_3d(n0, n1, n2, as_fftw(in.data()), as_fftw(out.data()), FFTW_FORWARD, flags);
    if (!plans_->backward || !plans_->forward) {
        if (plans_->backward) fftw_destroy_plan(plans_->backward);
        if (plans_->forward) fftw_destroy_plan(plans_->forward);
        delete plans_;
        throw Error("spectral transform: FFTW planning failed");
    }
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plans_->backward);
    fftw_destroy_plan(plans_->forward);
    delete plans_;
}

std::vector<cplx> SpectralTransform::to_space(std::span<const cplx> coefficients) const {
    const auto& n = kgrid_.extent();
    if (coefficients.size() != kgrid_.size()) throw Error("spectral transform: size mismatch");
    std::vector<cplx> in(coefficients.size()), out(coefficients.size());
    for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t j = 0; j < n[1]; ++j)
            for (std::size_t l = 0; l < n[2]; ++l) {
                const std::size_t f = flat_index(n, i, j, l);
                in[f] = coefficients[f] * pre_[0][i] * pre_[1][j] * pre_[2][l];
            }
    fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
    for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t j = 0; j < n[1]; ++j)
            for (std::size_t l = 0; l < n[2]; ++l) out[flat_index(n, i, j, l)] *= post_[0][i] * post_[1][j] * post_[2][l];
    return out;
}

std::vector<cplx> SpectralTransform::to_wavevector(std::span<const cplx> field) const {
    const auto& n = kgrid_.extent();
    if (field.size() != kgrid_.size()) throw Error("spectral transform: size mismatch");
    std::vector<cplx> in(field.size()), out(field.size());
    for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t j = 0; j < n[1]; ++j)
            for (std::size_t l = 0; l < n[2]; ++l) {
                const std::size_t f = flat_index(n, i, j, l);
                in[f] = field[f] * std::conj(post_[0][i] * post_[1][j] * post_[2][l]);
            }
    fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
    const double inv_n = 1.0 / static_cast<double>(field.size());
    for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t j = 0; j < n[1]; ++j)
            for (std::size_t l = 0; l < n[2]; ++l)
                out[flat_index(n, i, j, l)] *= inv_n * std::conj(pre_[0][i] * pre_[1][j] * pre_[2][l]);
    return out;
}

}  // namespace photonlab::field
