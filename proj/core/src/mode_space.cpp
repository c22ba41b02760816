#include "photonlab/mode_space.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "photonlab/summation.hpp"

namespace photonlab::mode_space {

WaveVectorGrid::WaveVectorGrid(Extent3 n_per_axis, const Vec3& delta_k, const Vec3& k_min)
    : n_(n_per_axis), delta_k_(delta_k), k_min_(k_min) {
    for (int a = 0; a < 3; ++a) {
        if (n_[a] == 0) throw Error("wavevector grid: extent must be positive");
        if (!(delta_k_[a] > 0.0) || !std::isfinite(delta_k_[a]))
            throw Error("wavevector grid: delta_k must be positive");
        if (!std::isfinite(k_min_[a])) throw Error("wavevector grid: k_min must be finite");
    }
    mask_.assign(size(), 0);
    const double zero_tol = 1e-12 * delta_k_.minCoeff();
    for (std::size_t f = 0; f < size(); ++f) mask_[f] = k(f).norm() <= zero_tol ? 1 : 0;
}

WaveVectorGrid WaveVectorGrid::centered(Extent3 n_per_axis, const Vec3& delta_k) {
    Vec3 k_min;
    for (int a = 0; a < 3; ++a)
        k_min[a] = -static_cast<double>(n_per_axis[a] / 2) * delta_k[a];
    return WaveVectorGrid(n_per_axis, delta_k, k_min);
}

Vec3 WaveVectorGrid::k(std::size_t flat) const {
    const auto m = unflatten(n_, flat);
    return {k_min_[0] + static_cast<double>(m[0]) * delta_k_[0],
            k_min_[1] + static_cast<double>(m[1]) * delta_k_[1],
            k_min_[2] + static_cast<double>(m[2]) * delta_k_[2]};
}

std::size_t WaveVectorGrid::unmasked_count() const {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 0));
}

double WaveVectorGrid::cell_weight() const {
    return delta_k_.prod() / std::pow(kTwoPi, 3);
}

std::size_t WaveVectorGrid::nearest(const Vec3& k) const {
    std::array<std::size_t, 3> m{};
    for (int a = 0; a < 3; ++a) {
        const double r = std::round((k[a] - k_min_[a]) / delta_k_[a]);
        m[a] = static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(n_[a] - 1)));
    }
    return flat_index(n_, m[0], m[1], m[2]);
}

bool WaveVectorGrid::covers(const Vec3& k) const {
    for (int a = 0; a < 3; ++a) {
        const double lo = k_min_[a] - 0.5 * delta_k_[a];
        const double hi = k_min_[a] + (static_cast<double>(n_[a]) - 0.5) * delta_k_[a];
        if (k[a] < lo || k[a] > hi) return false;
    }
    return true;
}

bool operator==(const WaveVectorGrid& a, const WaveVectorGrid& b) {
    return a.n_ == b.n_ && a.delta_k_ == b.delta_k_ && a.k_min_ == b.k_min_;
}

PolarizationVectors polarization(const Vec3& k) {
    PolarizationVectors p{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), CVec3::Zero(), CVec3::Zero()};
    const double norm = k.norm();
    if (norm == 0.0) return p;
    p.e_par = k / norm;
    const double rho = std::hypot(k[0], k[1]);
    if (rho <= 1e-14 * norm) {
        p.e_theta = Vec3(k[2] > 0.0 ? 1.0 : -1.0, 0.0, 0.0);
        p.e_phi = Vec3(0.0, 1.0, 0.0);
    } else {
        const double cos_t = k[2] / norm;
        const double sin_t = rho / norm;
        const double cos_p = k[0] / rho;
        const double sin_p = k[1] / rho;
        p.e_theta = Vec3(cos_t * cos_p, cos_t * sin_p, -sin_t);
        p.e_phi = Vec3(-sin_p, cos_p, 0.0);
    }
    const cplx i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    p.e_plus = (p.e_theta.cast<cplx>() + i * p.e_phi.cast<cplx>()) * inv_sqrt2;
    p.e_minus = (p.e_theta.cast<cplx>() - i * p.e_phi.cast<cplx>()) * inv_sqrt2;
    return p;
}

PolarizationBasis build_basis(const WaveVectorGrid& grid) {
    PolarizationBasis basis;
    basis.samples.reserve(grid.size());
    for (std::size_t f = 0; f < grid.size(); ++f)
        basis.samples.push_back(grid.masked(f) ? polarization(Vec3::Zero()) : polarization(grid.k(f)));
    return basis;
}

PhotonSpectrum::PhotonSpectrum(WaveVectorGrid grid) : grid_(std::move(grid)) {
    c_[0].assign(grid_.size(), cplx{});
    c_[1].assign(grid_.size(), cplx{});
}

void PhotonSpectrum::validate() const {
    for (const auto& slot : c_) {
        for (std::size_t f = 0; f < slot.size(); ++f) {
            if (!std::isfinite(slot[f].real()) || !std::isfinite(slot[f].imag()))
                throw Error("photon spectrum: non-finite amplitude");
            if (grid_.masked(f) && slot[f] != cplx{})
                throw Error("photon spectrum: masked sample carries amplitude");
        }
    }
}

namespace {

double raw_norm(const PhotonSpectrum& s) {
    const auto& g = s.grid();
    const auto plus = s.amplitudes(+1);
    const auto minus = s.amplitudes(-1);
    return g.cell_weight() * pairwise_sum(g.size(), [&](std::size_t f) {
               return std::norm(plus[f]) + std::norm(minus[f]);
           });
}

void require_weights(const std::array<cplx, 2>& w) {
    if (w[0] == cplx{} && w[1] == cplx{}) throw Error("helicity weights must not both be zero");
}

}  // namespace

PhotonSpectrum gaussian_spectrum(const WaveVectorGrid& grid, const Vec3& k0, double sigma,
                                 std::array<cplx, 2> helicity_weights) {
    if (!(sigma > 0.0)) throw Error("gaussian spectrum: sigma must be positive");
    require_weights(helicity_weights);
    if (!grid.covers(k0)) throw Error("gaussian spectrum: k0 outside grid coverage");
    if (k0.norm() < 5.0 * sigma)
        spdlog::warn("gaussian spectrum: |k0| = {} < 5 sigma = {}; packet is not collimated",
                     k0.norm(), 5.0 * sigma);

    PhotonSpectrum s(grid);
    const double inv_4s2 = 1.0 / (4.0 * sigma * sigma);
    for (int lambda : kHelicities) {
        const cplx w = helicity_weights[helicity_slot(lambda)];
        auto c = s.amplitudes(lambda);
        for (std::size_t f = 0; f < grid.size(); ++f) {
            if (grid.masked(f)) continue;
            c[f] = w * std::exp(-(grid.k(f) - k0).squaredNorm() * inv_4s2);
        }
    }
    return normalize(s);
}

PhotonSpectrum single_mode_spectrum(const WaveVectorGrid& grid, const Vec3& k0,
                                    std::array<cplx, 2> helicity_weights) {
    require_weights(helicity_weights);
    const std::size_t f = grid.nearest(k0);
    if (grid.masked(f)) throw Error("single mode: nearest sample is the masked k = 0");
    PhotonSpectrum s(grid);
    for (int lambda : kHelicities) s.amplitudes(lambda)[f] = helicity_weights[helicity_slot(lambda)];
    return normalize(s);
}

PhotonSpectrum normalize(const PhotonSpectrum& s) {
    const double n = raw_norm(s);
    if (!(n > 0.0) || !std::isfinite(n)) throw Error("unnormalizable");
    PhotonSpectrum out = s;
    const double scale = 1.0 / std::sqrt(n);
    for (int lambda : kHelicities)
        for (auto& v : out.amplitudes(lambda)) v *= scale;
    out.set_normalized(true);
    return out;
}

cplx scalar_product(const PhotonSpectrum& s1, const PhotonSpectrum& s2) {
    if (!(s1.grid() == s2.grid())) throw Error("scalar product: grid mismatch");
    const auto& g = s1.grid();
    const auto a_plus = s1.amplitudes(+1);
    const auto a_minus = s1.amplitudes(-1);
    const auto b_plus = s2.amplitudes(+1);
    const auto b_minus = s2.amplitudes(-1);
    return g.cell_weight() * pairwise_sum_complex(g.size(), [&](std::size_t f) {
               return std::conj(a_plus[f]) * b_plus[f] + std::conj(a_minus[f]) * b_minus[f];
           });
}

PhotonSpectrum localized_spectrum(const WaveVectorGrid& grid, const Vec3& x0) {
    PhotonSpectrum s(grid);
    for (int lambda : kHelicities) {
        auto c = s.amplitudes(lambda);
        for (std::size_t f = 0; f < grid.size(); ++f)
            if (!grid.masked(f)) c[f] = std::polar(1.0, -grid.k(f).dot(x0));
    }
    s.set_physical(false);
    return s;
}

PhotonSpectrum evolve(const PhotonSpectrum& s, double dt) {
    PhotonSpectrum out = s;
    if (dt == 0.0) return out;
    const auto& g = s.grid();
    for (std::size_t f = 0; f < g.size(); ++f) {
        const cplx phase = std::polar(1.0, -g.omega(f) * dt);
        for (int lambda : kHelicities) out.amplitudes(lambda)[f] *= phase;
    }
    return out;
}

SpectralSummary spectral_summary(const PhotonSpectrum& s) {
    const auto& g = s.grid();
    const auto plus = s.amplitudes(+1);
    const auto minus = s.amplitudes(-1);
    const double w = g.cell_weight();
    auto weight = [&](std::size_t f) { return std::norm(plus[f]) + std::norm(minus[f]); };

    SpectralSummary out;
    out.number = w * pairwise_sum(g.size(), weight);
    out.energy = w * pairwise_sum(g.size(), [&](std::size_t f) { return g.omega(f) * weight(f); });
    out.helicity = w * pairwise_sum(g.size(), [&](std::size_t f) {
                       return std::norm(plus[f]) - std::norm(minus[f]);
                   });
    for (int a = 0; a < 3; ++a) {
        out.momentum[a] = w * pairwise_sum(g.size(), [&](std::size_t f) { return g.k(f)[a] * weight(f); });
        out.current[a] = w * pairwise_sum(g.size(), [&](std::size_t f) {
                             return g.masked(f) ? 0.0 : g.k(f)[a] / g.omega(f) * weight(f);
                         });
    }
    return out;
}

}  // namespace photonlab::mode_space
