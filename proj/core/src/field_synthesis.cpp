#include "photonlab/field_synthesis.hpp"

#include <cmath>

#include "photonlab/parallel.hpp"

namespace photonlab::field {

using mode_space::kHelicities;
using mode_space::PhotonSpectrum;
using mode_space::WaveVectorGrid;

SpatialGrid::SpatialGrid(Extent3 n_per_axis, const Vec3& delta_x, const Vec3& origin)
    : n_(n_per_axis), delta_x_(delta_x), origin_(origin) {
    for (int a = 0; a < 3; ++a) {
        if (n_[a] == 0) throw Error("spatial grid: extent must be positive");
        if (!(delta_x_[a] > 0.0) || !std::isfinite(delta_x_[a]))
            throw Error("spatial grid: delta_x must be positive");
    }
}

SpatialGrid SpatialGrid::paired(const WaveVectorGrid& kgrid) {
    Vec3 dx, origin;
    for (int a = 0; a < 3; ++a) {
        dx[a] = kTwoPi / (static_cast<double>(kgrid.extent()[a]) * kgrid.delta_k()[a]);
        origin[a] = -static_cast<double>(kgrid.extent()[a] / 2) * dx[a];
    }
    return SpatialGrid(kgrid.extent(), dx, origin);
}

Vec3 SpatialGrid::box_length() const {
    return {static_cast<double>(n_[0]) * delta_x_[0], static_cast<double>(n_[1]) * delta_x_[1],
            static_cast<double>(n_[2]) * delta_x_[2]};
}

Vec3 SpatialGrid::x(std::size_t flat) const {
    const auto m = unflatten(n_, flat);
    return {origin_[0] + static_cast<double>(m[0]) * delta_x_[0],
            origin_[1] + static_cast<double>(m[1]) * delta_x_[1],
            origin_[2] + static_cast<double>(m[2]) * delta_x_[2]};
}

bool SpatialGrid::fft_paired_with(const WaveVectorGrid& kgrid) const {
    if (n_ != kgrid.extent()) return false;
    for (int a = 0; a < 3; ++a) {
        const double product = static_cast<double>(n_[a]) * delta_x_[a] * kgrid.delta_k()[a];
        if (std::abs(product - kTwoPi) > 1e-12 * kTwoPi) return false;
    }
    return true;
}

bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
    return a.n_ == b.n_ && a.delta_x_ == b.delta_x_ && a.origin_ == b.origin_;
}

double mode_measure(const WaveVectorGrid& kgrid, bool inject_fault) {
    return kgrid.delta_k().prod() / std::pow(kTwoPi, inject_fault ? 3.0 : 1.5);
}

namespace {

const cplx kI(0.0, 1.0);

// Sum over helicities of omega^{-1/2} c_lambda e_lambda exp(-i omega t) at one
// sample, times the common prefactor i/sqrt(2) * measure.
CVec3 potential_integrand(const PhotonSpectrum& s, std::size_t f, double t, double prefactor) {
    const auto& g = s.grid();
    if (g.masked(f)) return CVec3::Zero();
    const cplx cp = s.amplitude(+1, f);
    const cplx cm = s.amplitude(-1, f);
    if (cp == cplx{} && cm == cplx{}) return CVec3::Zero();
    const auto pol = mode_space::polarization(g.k(f));
    const double omega = g.omega(f);
    const cplx phase = std::polar(prefactor / std::sqrt(omega), -omega * t);
    return kI * phase * (cp * pol.e_plus + cm * pol.e_minus);
}

CVec3 curl_factor(const Vec3& k, const CVec3& a) {
    return kI * cross(k.cast<cplx>(), a);
}

}  // namespace

PointFields synthesize_point(const PhotonSpectrum& s, const Vec3& x, double t) {
    const auto& g = s.grid();
    const double pref = mode_measure(g) / std::sqrt(2.0);
    std::vector<CVec3> a_terms(g.size()), e_terms(g.size()), b_terms(g.size());
    for (std::size_t f = 0; f < g.size(); ++f) {
        const CVec3 a = potential_integrand(s, f, t, pref) * std::polar(1.0, g.k(f).dot(x));
        a_terms[f] = a;
        e_terms[f] = kI * g.omega(f) * a;
        b_terms[f] = curl_factor(g.k(f), a);
    }
    auto sum = [](const std::vector<CVec3>& v) {
        // pairwise over samples keeps the oracle's rounding small
        std::vector<CVec3> work = v;
        std::size_t n = work.size();
        while (n > 1) {
            const std::size_t half = (n + 1) / 2;
            for (std::size_t i = 0; i < n / 2; ++i) work[i] = work[2 * i] + work[2 * i + 1];
            if (n % 2 == 1) work[n / 2] = work[n - 1];
            n = half;
        }
        return work.empty() ? CVec3(CVec3::Zero()) : work[0];
    };
    return {sum(a_terms), sum(e_terms), sum(b_terms)};
}

FieldSnapshot synthesize(const PhotonSpectrum& s, const SpatialGrid& grid, double t,
                         const SynthesisOptions& options) {
    const auto& g = s.grid();
    FieldSnapshot out{g, grid, t, {}, {}, {}};
    const std::size_t n = g.size();

    if (options.method == SynthesisMethod::direct) {
        if (grid.extent() != g.extent()) throw Error("synthesize: direct mode needs matching extents");
        for (int a = 0; a < 3; ++a) {
            out.A_plus[a].resize(n);
            out.E_plus[a].resize(n);
            out.B_plus[a].resize(n);
        }
        parallel_for(n, [&](std::size_t j) {
            const PointFields p = synthesize_point(s, grid.x(j), t);
            for (int a = 0; a < 3; ++a) {
                out.A_plus[a][j] = p.A_plus[a];
                out.E_plus[a][j] = p.E_plus[a];
                out.B_plus[a][j] = p.B_plus[a];
            }
        });
        return out;
    }

    if (!grid.fft_paired_with(g)) throw Error("synthesize: grids are not FFT-paired");
    const double pref = mode_measure(g, options.inject_measure_fault) / std::sqrt(2.0);
    ComplexField3 a_coef, e_coef, b_coef;
    for (int a = 0; a < 3; ++a) {
        a_coef[a].assign(n, cplx{});
        e_coef[a].assign(n, cplx{});
        b_coef[a].assign(n, cplx{});
    }
    for (std::size_t f = 0; f < n; ++f) {
        const CVec3 a = potential_integrand(s, f, t, pref);
        const CVec3 b = curl_factor(g.k(f), a);
        const cplx e_mult = kI * g.omega(f);
        for (int c = 0; c < 3; ++c) {
            a_coef[c][f] = a[c];
            e_coef[c][f] = e_mult * a[c];
            b_coef[c][f] = b[c];
        }
    }
    const SpectralTransform transform(g, grid);
    for (int c = 0; c < 3; ++c) {
        out.A_plus[c] = transform.to_space(a_coef[c]);
        out.E_plus[c] = transform.to_space(e_coef[c]);
        out.B_plus[c] = transform.to_space(b_coef[c]);
    }
    return out;
}

RealFields real_fields(const FieldSnapshot& f) {
    RealFields out;
    auto twice_real = [](const std::vector<cplx>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = 2.0 * v[i].real();
        return r;
    };
    for (int c = 0; c < 3; ++c) {
        out.A[c] = twice_real(f.A_plus[c]);
        out.E[c] = twice_real(f.E_plus[c]);
        out.B[c] = twice_real(f.B_plus[c]);
    }
    return out;
}

double translation_check_1d(const PhotonSpectrum& s, const SpatialGrid& grid, double dt) {
    const auto& g = s.grid();
    for (std::size_t f = 0; f < g.size(); ++f) {
        if (s.amplitude(+1, f) == cplx{} && s.amplitude(-1, f) == cplx{}) continue;
        const Vec3 k = g.k(f);
        if (k[0] != 0.0 || k[1] != 0.0 || !(k[2] > 0.0)) throw Error("non-collinear");
    }
    const FieldSnapshot later = synthesize(s, grid, dt);
    const SpatialGrid shifted(grid.extent(), grid.delta_x(), grid.origin() - Vec3(0.0, 0.0, dt));
    const FieldSnapshot earlier = synthesize(s, shifted, 0.0);
    double worst = 0.0;
    double peak = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t j = 0; j < grid.size(); ++j) {
            worst = std::max(worst, std::abs(later.A_plus[c][j] - earlier.A_plus[c][j]));
            peak = std::max(peak, std::abs(later.A_plus[c][j]));
        }
    return peak > 0.0 ? worst / peak : worst;
}

}  // namespace photonlab::field
