#include "photonlab/densities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace photonlab::density {

using field::FieldSnapshot;
using field::SpectralTransform;

namespace {

const cplx kI(0.0, 1.0);

constexpr std::array<std::pair<DensityKind, std::string_view>, 9> kNames{{
    {DensityKind::number, "number"},
    {DensityKind::current, "current"},
    {DensityKind::energy, "energy"},
    {DensityKind::momentum, "momentum"},
    {DensityKind::four_momentum, "four_momentum"},
    {DensityKind::angular_momentum, "angular_momentum"},
    {DensityKind::bb_energy, "bb_energy"},
    {DensityKind::lp_number, "lp_number"},
    {DensityKind::helicity, "helicity"},
}};

DensityField make_field(DensityKind kind, const FieldSnapshot& f, std::size_t components) {
    return DensityField{kind, f.xgrid, f.t,
                        std::vector<std::vector<double>>(components, std::vector<double>(f.xgrid.size(), 0.0))};
}

std::vector<cplx> spectral_multiply(const SpectralTransform& transform, std::span<const cplx> field,
                                    const std::function<cplx(std::size_t)>& multiplier) {
    auto coef = transform.to_wavevector(field);
    for (std::size_t m = 0; m < coef.size(); ++m) coef[m] *= multiplier(m);
    return transform.to_space(coef);
}

// Raw contraction values before sign calibration, evaluated on a single
// one-sample spectrum along +z with lambda = +1.
struct CalibrationProbe {
    double number;
    double spin_z;
};

CalibrationProbe probe_single_mode() {
    const mode_space::WaveVectorGrid kgrid({1, 1, 4}, Vec3(1.0, 1.0, 1.0), Vec3(0.0, 0.0, 1.0));
    const auto s = mode_space::single_mode_spectrum(kgrid, Vec3(0.0, 0.0, 2.0), {cplx(1.0), cplx(0.0)});
    const auto f = field::synthesize(s, field::SpatialGrid::paired(kgrid), 0.0);
    CalibrationProbe p{0.0, 0.0};
    for (int a = 0; a < 3; ++a) p.number += (-kI * f.A_plus[a][0] * std::conj(f.E_plus[a][0])).real();
    const CVec3 e(f.E_plus[0][0], f.E_plus[1][0], f.E_plus[2][0]);
    const CVec3 a(f.A_plus[0][0], f.A_plus[1][0], f.A_plus[2][0]);
    p.spin_z = cross(e, a.conjugate())[2].real();
    return p;
}

const CalibrationProbe& calibration() {
    static const CalibrationProbe probe = probe_single_mode();
    return probe;
}

CVec3 at(const ComplexField3& v, std::size_t j) { return {v[0][j], v[1][j], v[2][j]}; }

// Bilinear u . conj(v) (Eigen's dot conjugates the first argument instead).
cplx dot_conj(const ComplexField3& u, const ComplexField3& v, std::size_t j) {
    return u[0][j] * std::conj(v[0][j]) + u[1][j] * std::conj(v[1][j]) + u[2][j] * std::conj(v[2][j]);
}

}  // namespace

std::string_view to_string(DensityKind kind) {
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<DensityKind> parse_kind(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

double mode_density_scale() { return 2.0 / std::pow(kTwoPi, 3); }

int number_sign() { return calibration().number > 0.0 ? 1 : -1; }

int spin_sign() { return calibration().spin_z > 0.0 ? 1 : -1; }

DensityField number_density(const FieldSnapshot& f) {
    auto out = make_field(DensityKind::number, f, 1);
    const double scale = number_sign() * mode_density_scale();
    for (std::size_t j = 0; j < f.xgrid.size(); ++j) {
        // (1/2)[-i z + c.c.] = Re(-i z) = Im(z)
        out.components[0][j] = scale * dot_conj(f.A_plus, f.E_plus, j).imag();
    }
    return out;
}

DensityField photon_current(const FieldSnapshot& f) {
    auto out = make_field(DensityKind::current, f, 3);
    const double scale = number_sign() * mode_density_scale();
    for (std::size_t j = 0; j < f.xgrid.size(); ++j) {
        const CVec3 v = cross(at(f.A_plus, j), at(f.B_plus, j).conjugate());
        for (int a = 0; a < 3; ++a) out.components[a][j] = scale * v[a].imag();
    }
    return out;
}

DensityField four_momentum_density(const FieldSnapshot& f) {
    auto out = make_field(DensityKind::four_momentum, f, 4);
    const SpectralTransform transform(f.kgrid, f.xgrid);
    const auto& g = f.kgrid;
    const double scale = number_sign() * mode_density_scale();
    const std::size_t n = f.xgrid.size();

    // i d/dt A+ -> omega A+ ; -i grad A+ -> k A+ (conjugated below to act on A-).
    for (int a = 0; a < 3; ++a) {
        const auto omega_a = spectral_multiply(transform, f.A_plus[a], [&](std::size_t m) { return cplx(g.omega(m)); });
        std::array<std::vector<cplx>, 3> k_a;
        for (int d = 0; d < 3; ++d)
            k_a[d] = spectral_multiply(transform, f.A_plus[a], [&](std::size_t m) { return cplx(g.k(m)[d]); });
        for (std::size_t j = 0; j < n; ++j) {
            const cplx e = f.E_plus[a][j];
            out.components[0][j] += scale * (kI * e * std::conj(omega_a[j])).real();
            for (int d = 0; d < 3; ++d) out.components[1 + d][j] += scale * (kI * e * std::conj(k_a[d][j])).real();
        }
    }
    return out;
}

DensityField energy_density(const FieldSnapshot& f) {
    auto four = four_momentum_density(f);
    return DensityField{DensityKind::energy, four.grid, four.t, {std::move(four.components[0])}};
}

DensityField momentum_density(const FieldSnapshot& f) {
    auto four = four_momentum_density(f);
    return DensityField{DensityKind::momentum, four.grid, four.t,
                        {std::move(four.components[1]), std::move(four.components[2]), std::move(four.components[3])}};
}

AngularMomentumDensity angular_momentum_density(const FieldSnapshot& f, const Vec3& origin) {
    const auto p = momentum_density(f);
    auto orbital = make_field(DensityKind::angular_momentum, f, 3);
    auto spin = make_field(DensityKind::angular_momentum, f, 3);
    auto total = make_field(DensityKind::angular_momentum, f, 3);
    const double spin_scale = spin_sign() * mode_density_scale();
    for (std::size_t j = 0; j < f.xgrid.size(); ++j) {
        const Vec3 r = f.xgrid.x(j) - origin;
        const Vec3 pj(p.components[0][j], p.components[1][j], p.components[2][j]);
        const Vec3 l = r.cross(pj);
        // (1/2)[E+ x A- + c.c.] = Re(E+ x conj(A+))
        const CVec3 s = cross(at(f.E_plus, j), at(f.A_plus, j).conjugate());
        for (int a = 0; a < 3; ++a) {
            orbital.components[a][j] = l[a];
            spin.components[a][j] = spin_scale * s[a].real();
            total.components[a][j] = orbital.components[a][j] + spin.components[a][j];
        }
    }
    return {std::move(orbital), std::move(spin), std::move(total)};
}

DensityField helicity_density(const FieldSnapshot& f) {
    auto out = make_field(DensityKind::helicity, f, 1);
    const double scale = mode_density_scale();
    for (std::size_t j = 0; j < f.xgrid.size(); ++j)
        out.components[0][j] = scale * dot_conj(f.A_plus, f.B_plus, j).real();
    return out;
}

std::vector<double> current_divergence(const FieldSnapshot& f) {
    const SpectralTransform transform(f.kgrid, f.xgrid);
    const auto& g = f.kgrid;
    ComplexField3 b_coef;
    for (int a = 0; a < 3; ++a) b_coef[a] = transform.to_wavevector(f.B_plus[a]);
    ComplexField3 curl_coef;
    for (int a = 0; a < 3; ++a) curl_coef[a].assign(g.size(), cplx{});
    for (std::size_t m = 0; m < g.size(); ++m) {
        const CVec3 c = kI * cross(g.k(m).cast<cplx>(), at(b_coef, m));
        for (int a = 0; a < 3; ++a) curl_coef[a][m] = c[a];
    }
    ComplexField3 curl_b;
    for (int a = 0; a < 3; ++a) curl_b[a] = transform.to_space(curl_coef[a]);

    // div(A+ x conj B+) = |B+|^2 - A+ . conj(curl B+); the first term is real.
    const double scale = number_sign() * mode_density_scale();
    std::vector<double> out(f.xgrid.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = -scale * dot_conj(f.A_plus, curl_b, j).imag();
    return out;
}

std::vector<cplx> apply_frequency_operator(std::span<const cplx> field, const SpectralTransform& transform,
                                           double power) {
    const auto& g = transform.kgrid();
    auto coef = transform.to_wavevector(field);
    double peak = 0.0;
    for (const auto& c : coef) peak = std::max(peak, std::abs(c));
    for (std::size_t m = 0; m < coef.size(); ++m) {
        if (g.masked(m)) {
            if (power < 0.0 && std::abs(coef[m]) > 1e-12 * peak)
                throw Error("frequency operator: negative power with k = 0 content");
            coef[m] = cplx{};
            continue;
        }
        coef[m] *= std::pow(g.omega(m), power);
    }
    return transform.to_space(coef);
}

PhotonWaveFields photon_wave_fields(const FieldSnapshot& f, const mode_space::PhotonSpectrum& s) {
    auto any_nonzero = [](std::span<const cplx> c) {
        return std::any_of(c.begin(), c.end(), [](cplx v) { return v != cplx{}; });
    };
    const bool has_plus = any_nonzero(s.amplitudes(+1));
    const bool has_minus = any_nonzero(s.amplitudes(-1));
    if (has_plus && has_minus) throw Error("mixed helicity");
    if (!has_plus && !has_minus) throw Error("photon wave fields: empty spectrum");
    if (!(s.grid() == f.kgrid)) throw Error("photon wave fields: grid mismatch");

    const SpectralTransform transform(f.kgrid, f.xgrid);
    const std::size_t n = f.xgrid.size();
    const int lambda = has_plus ? +1 : -1;
    // Snapshot fields -> single-photon mode functions.
    const double to_mode = 1.0 / std::pow(kTwoPi, 1.5);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    PhotonWaveFields w{f.xgrid, lambda, {}, {}, 0.0};
    ComplexField3 omega_half_psi;
    double f_peak = 0.0;
    double diff_peak = 0.0;
    for (int a = 0; a < 3; ++a) {
        std::vector<cplx> a_mode(n), e_mode(n);
        for (std::size_t j = 0; j < n; ++j) {
            a_mode[j] = to_mode * f.A_plus[a][j];
            e_mode[j] = to_mode * f.E_plus[a][j];
        }
        // Omega is a real multiplier, so on A = a+ + conj(a+) it acts as
        // Omega^p a+ + conj(Omega^p a+).
        const auto a_half = apply_frequency_operator(a_mode, transform, 0.5);
        const auto e_inv_half = apply_frequency_operator(e_mode, transform, -0.5);
        w.psi[a].resize(n);
        w.F[a].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const cplx omega_a = a_half[j] + std::conj(a_half[j]);
            const cplx omega_e = e_inv_half[j] + std::conj(e_inv_half[j]);
            w.psi[a][j] = inv_sqrt2 * (omega_a - kI * omega_e);
            const double e_real = 2.0 * to_mode * f.E_plus[a][j].real();
            const double b_real = 2.0 * to_mode * f.B_plus[a][j].real();
            w.F[a][j] = inv_sqrt2 * (e_real + kI * static_cast<double>(lambda) * b_real);
        }
        const auto check = apply_frequency_operator(w.psi[a], transform, 0.5);
        for (std::size_t j = 0; j < n; ++j) {
            f_peak = std::max(f_peak, std::abs(w.F[a][j]));
            diff_peak = std::max(diff_peak, std::abs(w.F[a][j] - kI * check[j]));
        }
    }
    w.identity_residual = f_peak > 0.0 ? diff_peak / f_peak : 0.0;
    return w;
}

DensityField bb_energy_density(const PhotonWaveFields& w, double t) {
    DensityField out{DensityKind::bb_energy, w.grid, t, {std::vector<double>(w.grid.size(), 0.0)}};
    for (int a = 0; a < 3; ++a)
        for (std::size_t j = 0; j < w.grid.size(); ++j) out.components[0][j] += std::norm(w.F[a][j]);
    return out;
}

DensityField lp_number_density(const PhotonWaveFields& w, double t) {
    DensityField out{DensityKind::lp_number, w.grid, t, {std::vector<double>(w.grid.size(), 0.0)}};
    for (int a = 0; a < 3; ++a)
        for (std::size_t j = 0; j < w.grid.size(); ++j) out.components[0][j] += std::norm(w.psi[a][j]);
    return out;
}

}  // namespace photonlab::density
