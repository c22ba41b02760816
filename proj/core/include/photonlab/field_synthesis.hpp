#pragma once

#include <span>
#include <vector>

#include "photonlab/mode_space.hpp"
#include "photonlab/types.hpp"

namespace photonlab::field {

class SpatialGrid {
public:
    SpatialGrid(Extent3 n_per_axis, const Vec3& delta_x, const Vec3& origin);

    /// Grid FFT-paired with kgrid (delta_x = 2 pi / (n delta_k)), origin at
    /// -floor(n/2) delta_x so x = 0 sits mid-box.
    static SpatialGrid paired(const mode_space::WaveVectorGrid& kgrid);

    const Extent3& extent() const { return n_; }
    const Vec3& delta_x() const { return delta_x_; }
    const Vec3& origin() const { return origin_; }
    std::size_t size() const { return extent_size(n_); }
    double cell_volume() const { return delta_x_.prod(); }
    Vec3 box_length() const;
    Vec3 x(std::size_t flat) const;

    bool fft_paired_with(const mode_space::WaveVectorGrid& kgrid) const;

    friend bool operator==(const SpatialGrid&, const SpatialGrid&);

private:
    Extent3 n_;
    Vec3 delta_x_;
    Vec3 origin_;
};

/// Maps coefficients on a WaveVectorGrid to fields on an FFT-paired
/// SpatialGrid and back:
///   to_space:      f(x_j) = sum_m g_m exp(i k_m . x_j)
///   to_wavevector: g_m    = (1/N) sum_j f(x_j) exp(-i k_m . x_j)
/// Exact inverses of each other for any k_min and origin.
class SpectralTransform {
public:
    SpectralTransform(const mode_space::WaveVectorGrid& kgrid, const SpatialGrid& xgrid);
    ~SpectralTransform();
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    std::vector<cplx> to_space(std::span<const cplx> coefficients) const;
    std::vector<cplx> to_wavevector(std::span<const cplx> field) const;

    const mode_space::WaveVectorGrid& kgrid() const { return kgrid_; }
    const SpatialGrid& xgrid() const { return xgrid_; }

private:
    struct Plans;
    mode_space::WaveVectorGrid kgrid_;
    SpatialGrid xgrid_;
    std::array<std::vector<cplx>, 3> pre_;   // exp(i m dk x0) per axis
    std::array<std::vector<cplx>, 3> post_;  // exp(i k_min x_j) per axis
    Plans* plans_;
};

struct FieldSnapshot {
    mode_space::WaveVectorGrid kgrid;
    SpatialGrid xgrid;
    double t = 0.0;
    ComplexField3 A_plus;
    ComplexField3 E_plus;
    ComplexField3 B_plus;
};

enum class SynthesisMethod { fft, direct };

struct SynthesisOptions {
    SynthesisMethod method = SynthesisMethod::fft;
    /// Test hook: uses (2 pi)^3 in place of the (2 pi)^{3/2} mode measure.
    bool inject_measure_fault = false;
};

/// Mode-expansion prefactor prod(delta_k) / (2 pi)^{3/2}, turning the
/// integral dk/(2pi)^{3/2} into a sum over grid samples.
double mode_measure(const mode_space::WaveVectorGrid& kgrid, bool inject_fault = false);

/// A+(x,t) = i/sqrt(2) sum_lambda integral dk/(2pi)^{3/2} omega^{-1/2}
///           c_lambda(k) e_lambda(k) exp(-i(omega t - k.x)),
/// E+ = -d/dt A+ and B+ = curl A+ taken on the integrand (i omega and i k x).
FieldSnapshot synthesize(const mode_space::PhotonSpectrum& s, const SpatialGrid& grid, double t,
                         const SynthesisOptions& options = {});

struct PointFields {
    CVec3 A_plus;
    CVec3 E_plus;
    CVec3 B_plus;
};

/// Direct quadrature of the mode expansion at one point.
PointFields synthesize_point(const mode_space::PhotonSpectrum& s, const Vec3& x, double t);

struct RealFields {
    RealField3 A;
    RealField3 E;
    RealField3 B;
};

/// A = A+ + A- = 2 Re A+, likewise for E and B.
RealFields real_fields(const FieldSnapshot& f);

/// max_z |A+(z, dt) - A+(z - c dt, 0)| / max_z |A+(z, dt)| for a spectrum
/// supported on k parallel to +z. Throws "non-collinear" otherwise.
double translation_check_1d(const mode_space::PhotonSpectrum& s, const SpatialGrid& grid, double dt);

}  // namespace photonlab::field
