#pragma once

#include <map>
#include <string>
#include <vector>

#include "photonlab/densities.hpp"
#include "photonlab/field_synthesis.hpp"
#include "photonlab/mode_space.hpp"

namespace photonlab::observables {

struct LocalizationWidth {
    /// Radius about the centroid holding 99% of the (positive) integral.
    double radius = 0.0;
    /// Set when the radius reaches the periodic box scale.
    bool box_limited = false;
};

struct ObservableReport {
    double number = 0.0;
    double energy = 0.0;
    Vec3 momentum = Vec3::Zero();
    double helicity = 0.0;
    Vec3 mean_position = Vec3::Zero();
    double continuity_residual_rel = 0.0;
    double group_speed = 0.0;
    std::map<std::string, LocalizationWidth> localization_widths;
    double lightcone_leak = 0.0;
};

/// Pairwise-summed cell-volume integral of each component.
std::vector<double> integrate(const density::DensityField& d);

/// Circular-mean centroid of component 0 on the periodic box; axes with a
/// single sample report that sample's coordinate.
Vec3 centroid(const density::DensityField& d);

/// Density-integral expectations at time t on an FFT-paired grid: number,
/// energy, momentum, helicity and mean position weighted by rho_p. Throws
/// "unnormalized" for spectra whose norm differs from 1 by more than 1e-8.
ObservableReport expectations(const mode_space::PhotonSpectrum& s, const field::SpatialGrid& grid, double t);

/// ||(rho(t+dt) - rho(t-dt)) / 2dt + div J(t)||_2 / ||div J(t)||_2; zero when
/// both terms vanish. Warns when omega_max dt > 0.01, omega_max taken over
/// samples above 1e-12 of the peak amplitude.
double continuity_residual(const mode_space::PhotonSpectrum& s, const field::SpatialGrid& grid, double t,
                           double dt);

/// |<x>(t1) - <x>(t0)| / (t1 - t0). Throws "zero interval" and "wraparound".
double transport_speed(const mode_space::PhotonSpectrum& s, const field::SpatialGrid& grid, double t0, double t1);

/// Fraction of the integral within `band` of the box faces along resolved
/// axes; used for guard-band checks.
double edge_fraction(const density::DensityField& d, double band = 0.125);

/// Radius about the centroid holding `fraction` of the positive integral.
LocalizationWidth mass_radius(const density::DensityField& d, double fraction);

/// Largest, over resolved axes, of the centred interval holding `fraction`
/// of the marginal density, as a fraction of the box length.
double axis_occupancy(const density::DensityField& d, double fraction = 0.99);

/// 99% radius per density, keyed by kind name.
std::map<std::string, LocalizationWidth> localization_widths(const std::vector<density::DensityField>& densities);

/// integral of rho_p(x, t) over |x - x0| > R + ct, x0 the t = 0 centroid.
/// Requires 99.9% of rho_p(., 0) inside R.
double lightcone_leak(const mode_space::PhotonSpectrum& s, const field::SpatialGrid& grid, double radius, double t);

}  // namespace photonlab::observables
