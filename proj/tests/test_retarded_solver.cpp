#include <doctest.h>

#include "photonlab/retarded_solver.hpp"
#include "support.hpp"

using namespace photonlab;
using namespace photonlab::retarded;

namespace {

double bump(const Vec3& x, double radius) {
    const double u = 1.0 - x.squaredNorm() / (radius * radius);
    return u > 0.0 ? u * u * u * u : 0.0;
}

// Oscillating z dipole on a compact bump; the charge is minus the centred
// difference of the dipole density, so the lattice source is conserved.
SourceCurrent dipole(double h, double dt, double t0, double t1) {
    const double radius = 1.5;
    const auto cells = static_cast<std::size_t>(std::ceil(radius / h - 1e-9)) + 1;
    const double half = static_cast<double>(cells) * h;
    const Lattice lat{{2 * cells + 1, 2 * cells + 1, 2 * cells + 1}, Vec3::Constant(h), Vec3::Constant(-half)};
    const TimeAxis axis{static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9)) + 1, t0, dt};
    return SourceCurrent::from_function(lat, axis, [&](const Vec3& x, double t) {
        const double dgz = (bump(x + Vec3(0, 0, h), radius) - bump(x - Vec3(0, 0, h), radius)) / (2.0 * h);
        return std::pair<double, Vec3>(-std::sin(t) * dgz, Vec3(0, 0, std::cos(t) * bump(x, radius)));
    });
}

SourceCurrent ball(double h, double radius) {
    const auto cells = static_cast<std::size_t>(std::ceil(radius / h));
    const Lattice lat{{2 * cells + 1, 2 * cells + 1, 2 * cells + 1}, Vec3::Constant(h),
                      Vec3::Constant(-static_cast<double>(cells) * h)};
    double total = 0.0;
    for (std::size_t c = 0; c < lat.size(); ++c)
        if (lat.point(c).norm() <= radius) total += lat.cell_volume();
    return SourceCurrent::from_function(lat, TimeAxis{2, -100.0, 200.0}, [&](const Vec3& x, double) {
        return std::pair<double, Vec3>(x.norm() <= radius ? 1.0 / total : 0.0, Vec3::Zero());
    });
}

}  // namespace

TEST_CASE("source lattice and time axis") {
    const Lattice lat{{2, 3, 4}, Vec3(0.5, 1.0, 2.0), Vec3(1, 2, 3)};
    CHECK(lat.size() == 24);
    CHECK((lat.point(flat_index(lat.n, 1, 2, 3)) - Vec3(1.5, 4.0, 9.0)).norm() < 1e-15);
    CHECK(lat.cell_volume() == 1.0);
    const TimeAxis axis{5, 1.0, 0.25};
    CHECK(axis.end() == 2.0);
    CHECK_THROWS_AS(SourceCurrent(lat, TimeAxis{1, 0.0, 1.0}), Error);
    CHECK_THROWS_AS(SourceCurrent(Lattice{{0, 1, 1}}, axis), Error);

    SourceCurrent src(lat, axis);
    src.set(1, 4, 2.0, Vec3(1, 0, 0));
    const auto mid = src.interpolate(4, 1.375);
    REQUIRE(mid);
    CHECK((*mid - Eigen::Vector4d(1.0, 0.5, 0.0, 0.0)).norm() < 1e-15);
    CHECK_FALSE(src.interpolate(4, 3.0));
    CHECK(src.active(4));
    CHECK_FALSE(src.active(5));
}

TEST_CASE("zero source gives zero potential") {
    const SourceCurrent src(Lattice{{3, 3, 3}, Vec3::Constant(0.5), Vec3::Zero()}, TimeAxis{3, 0.0, 1.0});
    const std::vector<Vec3> points{Vec3(0.2, 0.1, 0.0), Vec3(4, 4, 4)};
    const std::vector<double> times{0.5, 1.5};
    const auto pf = retarded_potential(src, points, times, RetardedOptions{});
    for (std::size_t k = 0; k < pf.A.size(); ++k) {
        CHECK(pf.phi_over_c[k] == 0.0);
        CHECK(pf.A[k].norm() == 0.0);
    }
}

TEST_CASE("static ball reproduces the Coulomb potential") {
    const auto src = ball(0.25, 1.0);
    std::vector<Vec3> points{Vec3(3, 0, 0), Vec3(0, -5, 0), Vec3(2, 2, 2)};
    const std::vector<double> times{0.0};
    const auto pf = retarded_potential(src, points, times, default_options(src));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double exact = 1.0 / (4.0 * kPi * points[i].norm());
        CHECK(std::abs(pf.phi_over_c[i] - exact) / exact < 1e-3);
        CHECK(pf.A[i].norm() == 0.0);
    }
}

TEST_CASE("Coulomb error falls with the cell size") {
    const std::vector<Vec3> points{Vec3(1.3, 0.4, 0.2)};
    const std::vector<double> times{0.0};
    const double exact = 1.0 / (4.0 * kPi * points[0].norm());
    double previous = 1.0;
    for (double h : {0.25, 0.125, 0.0625}) {
        const auto src = ball(h, 1.0);
        const double err = std::abs(retarded_potential(src, points, times, default_options(src)).phi_over_c[0] - exact);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous / exact < 1e-3);
}

TEST_CASE("potential is linear in the source") {
    auto g = support::rng(11);
    const Lattice lat{{4, 3, 3}, Vec3::Constant(0.4), Vec3::Zero()};
    const TimeAxis axis{12, 0.0, 1.0};
    SourceCurrent a(lat, axis), b(lat, axis), mix(lat, axis);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t it = 0; it < axis.count; ++it)
        for (std::size_t c = 0; c < lat.size(); ++c) {
            const double qa = u(g), qb = u(g);
            const Vec3 ja = support::random_vec(g), jb = support::random_vec(g);
            a.set(it, c, qa, ja);
            b.set(it, c, qb, jb);
            mix.set(it, c, 2.0 * qa - 0.5 * qb, 2.0 * ja - 0.5 * jb);
        }
    const std::vector<Vec3> points{Vec3(3, 1, 2), Vec3(-1, 0.3, 0.7)};
    const std::vector<double> times{6.5, 7.2};
    const RetardedOptions opts{};
    const auto pa = retarded_potential(a, points, times, opts);
    const auto pb = retarded_potential(b, points, times, opts);
    const auto pm = retarded_potential(mix, points, times, opts);
    for (std::size_t k = 0; k < pm.A.size(); ++k) {
        CHECK(std::abs(pm.phi_over_c[k] - (2.0 * pa.phi_over_c[k] - 0.5 * pb.phi_over_c[k])) < 1e-12);
        CHECK((pm.A[k] - (2.0 * pa.A[k] - 0.5 * pb.A[k])).norm() < 1e-12);
    }
}

TEST_CASE("dipole radiation falls off as 1/r") {
    const auto src = dipole(0.25, 0.05, 0.0, 8.0);
    std::vector<Vec3> points;
    std::vector<double> amp;
    const Vec3 dir = Vec3(1.0, 0.3, 0.2).normalized();
    for (double r : {20.0, 40.0, 80.0}) {
        // fixed retarded phase: cos(t - r) = 1
        const std::vector<Vec3> p{dir * r};
        const std::vector<double> t{r + 2.0 * kPi};
        amp.push_back(std::abs(retarded_potential(src, p, t, default_options(src)).A[0][2]));
    }
    const double slope = std::log(amp[2] / amp[0]) / std::log(4.0);
    CHECK(std::abs(slope + 1.0) <= 0.05);
}

TEST_CASE("gauge residual of analytic potentials") {
    const double h = 0.05;
    const Lattice stencil{{3, 3, 3}, Vec3::Constant(h), Vec3(0.3, -0.1, 0.7)};
    std::vector<double> times;
    for (int i = 0; i < 5; ++i) times.push_back(1.0 + i * h);
    const auto lorenz = potential_from_function(stencil, times, [](const Vec3& x, double t) {
        return std::pair<double, Vec3>(std::cos(t - x[2]), Vec3(0, 0, std::cos(t - x[2])));
    });
    CHECK(gauge_residual(lorenz) <= 1e-10);
    const auto broken = potential_from_function(stencil, times, [](const Vec3& x, double t) {
        return std::pair<double, Vec3>(0.0, Vec3(0, 0, std::cos(t - x[2])));
    });
    CHECK(gauge_residual(broken) > 0.1);
}

TEST_CASE("retarded potential of a conserved source satisfies the Lorenz condition") {
    const auto src = dipole(0.25, 0.05, 4.0, 12.0);
    CHECK(src.conservation_residual() < 1e-2);
    const Lattice stencil{{3, 3, 3}, Vec3::Constant(0.1), Vec3(0.5, -0.1, 3.9)};
    std::vector<double> times;
    for (int i = 0; i < 5; ++i) times.push_back(11.5 + 0.1 * i);
    CHECK(gauge_residual(retarded_potential(src, stencil, times, default_options(src))) < 1e-2);
}

TEST_CASE("a current without charge is not conserved") {
    const Lattice lat{{5, 5, 5}, Vec3::Constant(0.25), Vec3::Constant(-0.5)};
    const auto src = SourceCurrent::from_function(lat, TimeAxis{20, 0.0, 0.1}, [](const Vec3& x, double t) {
        return std::pair<double, Vec3>(0.0, Vec3(0, 0, std::cos(t) * bump(x, 0.6)));
    });
    CHECK(src.conservation_residual() > 0.1);
}

TEST_CASE("fields from analytic potentials") {
    const double h = 0.02;
    const Lattice stencil{{3, 3, 3}, Vec3::Constant(h), Vec3(1.0, 2.0, 3.0)};
    std::vector<double> times;
    for (int i = 0; i < 4; ++i) times.push_back(0.5 + i * h);

    const auto wave = potential_from_function(stencil, times, [](const Vec3& x, double t) {
        return std::pair<double, Vec3>(0.0, Vec3(std::cos(t - x[2]), 0, 0));
    });
    const auto samples = fields_from_potential(wave);
    REQUIRE_FALSE(samples.empty());
    for (const auto& s : samples) {
        CHECK(std::abs(s.E[0] - s.B[1]) < 1e-3);
        CHECK(std::abs(s.E[0]) + std::abs(s.B[1]) > 0.0);
        CHECK(std::abs(s.E[1]) + std::abs(s.E[2]) + std::abs(s.B[0]) + std::abs(s.B[2]) < 1e-12);
        CHECK((s.faraday + s.faraday.transpose()).norm() == 0.0);
    }

    const auto coulomb = potential_from_function(stencil, times, [](const Vec3& x, double) {
        return std::pair<double, Vec3>(1.0 / (4.0 * kPi * x.norm()), Vec3::Zero());
    });
    for (const auto& s : fields_from_potential(coulomb)) {
        CHECK(s.B.norm() == 0.0);
        const Vec3 x = stencil.point(s.point_index);
        const Vec3 exact = x / (4.0 * kPi * std::pow(x.norm(), 3));
        CHECK((s.E - exact).norm() < 1e-3 * exact.norm());
    }
}

TEST_CASE("solver errors") {
    const auto src = ball(0.5, 1.0);
    const std::vector<Vec3> inside{Vec3(0.1, 0.0, 0.0)};
    const std::vector<double> t0{0.0};
    CHECK_THROWS_WITH(retarded_potential(src, inside, t0, RetardedOptions{}), doctest::Contains("inside a source cell"));
    CHECK_NOTHROW(retarded_potential(src, inside, t0, default_options(src)));
    const std::vector<double> late{500.0};
    CHECK_THROWS_WITH(retarded_potential(src, inside, late, default_options(src)), doctest::Contains("outside source window"));

    const std::vector<Vec3> loose{Vec3(4, 0, 0), Vec3(5, 0, 0)};
    const std::vector<double> times{0.0, 0.1, 0.2, 0.3};
    CHECK_THROWS_WITH(gauge_residual(retarded_potential(src, loose, times, default_options(src))),
                      doctest::Contains("insufficient stencil"));
    const Lattice flat{{3, 3, 2}, Vec3::Constant(0.1), Vec3(4, 0, 0)};
    CHECK_THROWS_WITH(fields_from_potential(retarded_potential(src, flat, times, default_options(src))),
                      doctest::Contains("insufficient stencil"));
    const Lattice cube{{3, 3, 3}, Vec3::Constant(0.1), Vec3(4, 0, 0)};
    const std::vector<double> short_times{0.0, 0.1, 0.2};
    CHECK_THROWS_WITH(gauge_residual(retarded_potential(src, cube, short_times, default_options(src))),
                      doctest::Contains("insufficient stencil"));
}
