#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "photonlab/field_synthesis.hpp"
#include "photonlab/mode_space.hpp"

/// Single-photon densities built from the positive-frequency mode functions
/// of a FieldSnapshot.
///
/// Every bilinear density carries the factor kModeDensityScale = 2/(2 pi)^3,
/// which converts the (2 pi)^{3/2} mode-expansion convention of the
/// synthesized fields into a density whose integral is the spectral norm
/// sum_lambda integral dk/(2 pi)^3 |c|^2. The overall sign sigma of the
/// A+ . E- contraction is fixed once by number_sign().
namespace photonlab::density {

enum class DensityKind {
    number,
    current,
    energy,
    momentum,
    four_momentum,
    angular_momentum,
    bb_energy,
    lp_number,
    helicity,
};

std::string_view to_string(DensityKind kind);
std::optional<DensityKind> parse_kind(std::string_view name);

struct DensityField {
    DensityKind kind;
    field::SpatialGrid grid;
    double t = 0.0;
    /// One array per component: 1 for scalars, 3 for vectors, 4 for (H, P).
    std::vector<std::vector<double>> components;

    std::size_t component_count() const { return components.size(); }
};

double mode_density_scale();

/// Sign sigma making a single-mode number density positive; computed once
/// from a one-sample spectrum and cached.
int number_sign();
/// Sign of the spin term making a pure lambda = +1 mode carry +1 spin along k.
int spin_sign();

/// rho = sigma (1/2) [-i A+ . E- + c.c.] (times the mode density scale).
DensityField number_density(const field::FieldSnapshot& f);

/// J = sigma (1/2) [-i A+ x cB- + c.c.].
DensityField photon_current(const field::FieldSnapshot& f);

/// Components (H, Px, Py, Pz):
///   H = sigma sum_a (i/2) E+_a (-i d/dt) A-_a + c.c.
///   P = sigma sum_a (i/2) E+_a (i grad) A-_a + c.c.
/// Derivatives are applied spectrally.
DensityField four_momentum_density(const field::FieldSnapshot& f);
DensityField energy_density(const field::FieldSnapshot& f);
DensityField momentum_density(const field::FieldSnapshot& f);

struct AngularMomentumDensity {
    DensityField orbital;
    DensityField spin;
    DensityField total;
};

/// Orbital part (x - origin) x P; spin part sigma_s (1/2) E+ x A- + c.c.
AngularMomentumDensity angular_momentum_density(const field::FieldSnapshot& f, const Vec3& origin);

/// (1/2) [A+ . cB- + c.c.]; integrates to sum_lambda lambda integral |c|^2.
DensityField helicity_density(const field::FieldSnapshot& f);

/// div J evaluated as -sigma Im(A+ . conj(curl B+)), exact for the
/// band-limited mode functions.
std::vector<double> current_divergence(const field::FieldSnapshot& f);

/// Multiplies the positive-frequency field by (c|k|)^power on the transform's
/// wavevector grid. Throws for negative powers when the masked k = 0 sample
/// carries content.
std::vector<cplx> apply_frequency_operator(std::span<const cplx> field, const field::SpectralTransform& transform,
                                           double power);

struct PhotonWaveFields {
    field::SpatialGrid grid;
    int helicity = 0;
    /// F = sqrt(1/2) (E + i lambda c B) from the real mode fields.
    ComplexField3 F;
    /// psi = sqrt(1/2) [Omega^{1/2} A - i Omega^{-1/2} E].
    ComplexField3 psi;
    /// max |F - i Omega^{1/2} psi| / max |F|.
    double identity_residual = 0.0;
};

/// Requires a pure-helicity spectrum ("mixed helicity" otherwise).
PhotonWaveFields photon_wave_fields(const field::FieldSnapshot& f, const mode_space::PhotonSpectrum& s);

/// |F|^2, the energy density of the BB field.
DensityField bb_energy_density(const PhotonWaveFields& w, double t);
/// |psi|^2, the LP number density.
DensityField lp_number_density(const PhotonWaveFields& w, double t);

}  // namespace photonlab::density
