#include <doctest.h>

#include "frozen_values.hpp"
#include "photonlab/observables.hpp"
#include "support.hpp"

using namespace photonlab;
using namespace photonlab::observables;
using mode_space::WaveVectorGrid;
using field::SpatialGrid;

namespace {

mode_space::PhotonSpectrum frozen_spectrum() {
    const WaveVectorGrid k({frozen::n[0], frozen::n[1], frozen::n[2]},
                           Vec3(frozen::delta_k[0], frozen::delta_k[1], frozen::delta_k[2]),
                           Vec3(frozen::k_min[0], frozen::k_min[1], frozen::k_min[2]));
    return mode_space::gaussian_spectrum(k, Vec3(frozen::k0[0], frozen::k0[1], frozen::k0[2]), frozen::sigma,
                                         {cplx(frozen::weights[0], frozen::weights[1]),
                                          cplx(frozen::weights[2], frozen::weights[3])});
}

WaveVectorGrid cube(std::size_t n, double dk) { return WaveVectorGrid::centered({n, n, n}, Vec3::Constant(dk)); }

mode_space::PhotonSpectrum packet(const WaveVectorGrid& k, const Vec3& k0) {
    return mode_space::gaussian_spectrum(k, k0, 1.0, {cplx(1), cplx(0)});
}

mode_space::PhotonSpectrum shifted(const mode_space::PhotonSpectrum& s, const Vec3& x0) {
    auto out = s;
    for (int lambda : mode_space::kHelicities) {
        auto c = out.amplitudes(lambda);
        for (std::size_t m = 0; m < c.size(); ++m) c[m] *= std::polar(1.0, -s.grid().k(m).dot(x0));
    }
    return out;
}

}  // namespace

TEST_CASE("expectations match the oracle sums") {
    const auto s = frozen_spectrum();
    const auto r = expectations(s, SpatialGrid::paired(s.grid()), frozen::t);
    CHECK(std::abs(r.number - frozen::number) < 1e-6);
    CHECK(support::rel(r.energy, frozen::energy) < 1e-6);
    CHECK(std::abs(r.helicity - frozen::helicity) < 1e-6);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(r.momentum[c] - frozen::momentum[c]) < 1e-6);

    auto loose = s;
    loose.amplitudes(+1)[7] *= 1.5;
    CHECK_THROWS_WITH(expectations(loose, SpatialGrid::paired(s.grid()), 0.0), doctest::Contains("unnormalized"));
}

TEST_CASE("expectations are conserved and phase blind") {
    const auto k = cube(24, 0.5);
    const auto s = mode_space::gaussian_spectrum(k, Vec3(3, 0, 1), 1.0, {cplx(0.6), cplx(0, 0.8)});
    const auto grid = SpatialGrid::paired(k);
    const auto a = expectations(s, grid, 0.0);
    const auto b = expectations(s, grid, 1.5);
    CHECK(std::abs(a.number - b.number) < 1e-10);
    CHECK(std::abs(a.energy - b.energy) < 1e-10);
    CHECK(std::abs(a.helicity - b.helicity) < 1e-10);
    CHECK((a.momentum - b.momentum).norm() < 1e-10);

    auto rotated = s;
    for (int lambda : mode_space::kHelicities)
        for (auto& c : rotated.amplitudes(lambda)) c *= std::polar(1.0, 0.9);
    const auto c = expectations(rotated, grid, 0.0);
    CHECK(std::abs(c.energy - a.energy) < 1e-12);
    CHECK((c.mean_position - a.mean_position).norm() < 1e-12);
}

TEST_CASE("centroid follows a spatial shift") {
    const auto k = cube(24, 0.5);
    const auto s = packet(k, Vec3(3, 0, 1));
    const auto grid = SpatialGrid::paired(k);
    const Vec3 x0(1.2, -0.8, 0.5);
    const auto c0 = centroid(density::number_density(field::synthesize(s, grid, 0.0)));
    const auto c1 = centroid(density::number_density(field::synthesize(shifted(s, x0), grid, 0.0)));
    CHECK((c1 - c0 - x0).norm() < 1e-6);
}

TEST_CASE("continuity residual") {
    const auto k = cube(16, 0.5);
    const auto grid = SpatialGrid::paired(k);
    const auto plane = mode_space::single_mode_spectrum(k, Vec3(1, 0.5, 0), {cplx(1), cplx(0)});
    CHECK(continuity_residual(plane, grid, 0.3, 1e-3) == 0.0);
    const auto s = packet(k, Vec3(2, 0, 0));
    CHECK(continuity_residual(s, grid, 0.3, 1e-4) < 1e-6);
    CHECK_THROWS_AS(continuity_residual(s, grid, 0.3, 0.0), Error);
}

TEST_CASE("transport speed") {
    const WaveVectorGrid k({32, 48, 48}, Vec3::Constant(0.25), Vec3(6, -6, -6));
    const auto grid = SpatialGrid::paired(k);
    // the centroid drifts with the integrated current, sum |c|^2 k/|k|
    const auto moving = mode_space::gaussian_spectrum(k, Vec3(10, 0, 0), 0.5, {cplx(1), cplx(0)});
    const double v = transport_speed(moving, grid, 0.0, 1.0);
    CHECK(std::abs(v - mode_space::spectral_summary(moving).current.norm()) < 1e-3);
    CHECK(v <= 1.0);
    CHECK_THROWS_WITH(transport_speed(moving, grid, 1.0, 1.0), doctest::Contains("zero interval"));
}

TEST_CASE("localization widths") {
    const auto k = cube(24, 0.5);
    const auto grid = SpatialGrid::paired(k);
    const auto s = packet(k, Vec3(4, 0, 0));
    const auto rho = density::number_density(field::synthesize(s, grid, 0.0));
    const auto a = localization_widths({rho});
    const auto b = localization_widths({rho});
    REQUIRE(a.count("number") == 1);
    CHECK(a.at("number").radius == b.at("number").radius);
    CHECK_FALSE(a.at("number").box_limited);
    CHECK(mass_radius(rho, 0.5).radius < mass_radius(rho, 0.9).radius);

    const auto plane = mode_space::single_mode_spectrum(k, Vec3(1, 0, 0), {cplx(1), cplx(0)});
    const auto flat = density::number_density(field::synthesize(plane, grid, 0.0));
    CHECK(mass_radius(flat, 0.99).box_limited);
    CHECK(axis_occupancy(flat) > 0.95);
    CHECK(axis_occupancy(rho) < 0.5);
}

TEST_CASE("lightcone leak") {
    const auto k = cube(24, 0.5);
    const auto grid = SpatialGrid::paired(k);
    const auto s = packet(k, Vec3(4, 0, 0));
    const double r = mass_radius(density::number_density(field::synthesize(s, grid, 0.0)), 0.9995).radius;
    CHECK(lightcone_leak(s, grid, r, 0.0) <= 1e-3);
    CHECK(lightcone_leak(s, grid, grid.box_length().norm(), 2.0) == 0.0);
    CHECK_THROWS_WITH(lightcone_leak(s, grid, 0.1, 1.0), doctest::Contains("precondition"));
}

TEST_CASE("edge fraction of a centred packet is small") {
    const auto k = cube(24, 0.5);
    const auto s = packet(k, Vec3(4, 0, 0));
    const auto rho = density::number_density(field::synthesize(s, SpatialGrid::paired(k), 0.0));
    CHECK(edge_fraction(rho) < 1e-2);
    const Vec3 corner = 0.5 * SpatialGrid::paired(k).box_length();
    const auto edge = density::number_density(field::synthesize(shifted(s, corner), SpatialGrid::paired(k), 0.0));
    CHECK(edge_fraction(edge) > 0.5);
    const auto n = integrate(rho);
    REQUIRE(n.size() == 1);
    CHECK(n[0] == doctest::Approx(1.0).epsilon(1e-10));
}
