#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "photonlab/types.hpp"

/// Wavevector grids, helicity polarization bases and single-photon spectra.
///
/// Natural units throughout: hbar = c = eps0 = 1, so omega_k = |k|. Integrals
/// over k-space are Riemann sums with the uniform cell weight
/// prod(delta_k) / (2 pi)^3.
namespace photonlab::mode_space {

class WaveVectorGrid {
public:
    /// Samples k = k_min + m * delta_k, m in [0, n). Throws on non-positive
    /// extents or spacings. Samples with |k| == 0 are masked.
    WaveVectorGrid(Extent3 n_per_axis, const Vec3& delta_k, const Vec3& k_min);

    /// Grid symmetric about k = 0 (k_min = -floor(n/2) * delta_k per axis),
    /// the layout of a standard FFT frequency axis.
    static WaveVectorGrid centered(Extent3 n_per_axis, const Vec3& delta_k);

    const Extent3& extent() const { return n_; }
    const Vec3& delta_k() const { return delta_k_; }
    const Vec3& k_min() const { return k_min_; }
    std::size_t size() const { return extent_size(n_); }

    Vec3 k(std::size_t flat) const;
    double omega(std::size_t flat) const { return k(flat).norm(); }
    bool masked(std::size_t flat) const { return mask_[flat] != 0; }
    std::size_t unmasked_count() const;

    /// prod(delta_k) / (2 pi)^3.
    double cell_weight() const;

    /// Flat index of the sample nearest to k (clamped into the grid).
    std::size_t nearest(const Vec3& k) const;
    bool covers(const Vec3& k) const;

    friend bool operator==(const WaveVectorGrid& a, const WaveVectorGrid& b);

private:
    Extent3 n_;
    Vec3 delta_k_;
    Vec3 k_min_;
    std::vector<char> mask_;
};

/// Helicity index helpers: slot 0 holds lambda = +1, slot 1 holds lambda = -1.
inline constexpr std::array<int, 2> kHelicities{+1, -1};
inline constexpr std::size_t helicity_slot(int lambda) { return lambda > 0 ? 0 : 1; }

struct PolarizationVectors {
    Vec3 e_par;
    Vec3 e_theta;
    Vec3 e_phi;
    CVec3 e_plus;
    CVec3 e_minus;

    const CVec3& e(int lambda) const { return lambda > 0 ? e_plus : e_minus; }
};

/// e_lambda(k) = (e_theta + i lambda e_phi) / sqrt(2). At k parallel to +z or
/// -z the azimuth is taken as 0: e_theta = (+-1, 0, 0), e_phi = (0, 1, 0).
/// k == 0 yields all-zero vectors.
PolarizationVectors polarization(const Vec3& k);

struct PolarizationBasis {
    std::vector<PolarizationVectors> samples;
};

PolarizationBasis build_basis(const WaveVectorGrid& grid);

class PhotonSpectrum {
public:
    explicit PhotonSpectrum(WaveVectorGrid grid);

    const WaveVectorGrid& grid() const { return grid_; }

    std::span<cplx> amplitudes(int lambda) { return c_[helicity_slot(lambda)]; }
    std::span<const cplx> amplitudes(int lambda) const { return c_[helicity_slot(lambda)]; }
    cplx amplitude(int lambda, std::size_t flat) const { return c_[helicity_slot(lambda)][flat]; }

    /// True once normalize() produced the spectrum.
    bool normalized() const { return normalized_; }
    /// False for band-limited stand-ins of non-normalizable basis states.
    bool physical() const { return physical_; }

    void set_normalized(bool v) { normalized_ = v; }
    void set_physical(bool v) { physical_ = v; }

    /// Throws unless every amplitude is finite and masked samples are zero.
    void validate() const;

private:
    WaveVectorGrid grid_;
    std::array<std::vector<cplx>, 2> c_;
    bool normalized_ = false;
    bool physical_ = true;
};

struct SpectralSummary {
    double number = 0.0;
    double energy = 0.0;
    Vec3 momentum = Vec3::Zero();
    double helicity = 0.0;
    /// Sum over lambda of integral |c|^2 e_k, the k-space photon current.
    Vec3 current = Vec3::Zero();
};

/// c_lambda(k) = w_lambda * exp(-|k - k0|^2 / (4 sigma^2)), normalized.
PhotonSpectrum gaussian_spectrum(const WaveVectorGrid& grid, const Vec3& k0, double sigma,
                                 std::array<cplx, 2> helicity_weights);

/// One nonzero sample nearest k0, normalized: a plane wave on the periodic box.
PhotonSpectrum single_mode_spectrum(const WaveVectorGrid& grid, const Vec3& k0,
                                    std::array<cplx, 2> helicity_weights);

PhotonSpectrum normalize(const PhotonSpectrum& s);

/// sum_lambda integral dk/(2pi)^3 conj(c1) c2; conjugate-linear in s1.
cplx scalar_product(const PhotonSpectrum& s1, const PhotonSpectrum& s2);

/// c_lambda(k) = exp(-i k.x0) on every unmasked sample, both helicities.
/// Not normalized and flagged non-physical.
PhotonSpectrum localized_spectrum(const WaveVectorGrid& grid, const Vec3& x0);

/// c_lambda(k) <- c_lambda(k) exp(-i omega_k dt).
PhotonSpectrum evolve(const PhotonSpectrum& s, double dt);

SpectralSummary spectral_summary(const PhotonSpectrum& s);

}  // namespace photonlab::mode_space
