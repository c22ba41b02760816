#include <doctest.h>

#include "photonlab/fock_algebra.hpp"
#include "support.hpp"

using namespace photonlab;
using namespace photonlab::fock;

TEST_CASE("number and commutator identities for n = 0..10") {
    const auto ms = ModeSet::transverse(1);
    for (int n = 0; n <= 10; ++n) {
        CAPTURE(n);
        const auto v = n_photon_state(ms, 0, n);
        CHECK(std::abs(inner_product(v, v) - 1.0) < 1e-12);
        CHECK(std::abs(number_expectation(v, 0) - n) < 1e-12);
        const cplx anti = inner_product(v, apply_annihilate(apply_create(v, 0), 0));
        CHECK(std::abs(anti - static_cast<double>(n + 1)) < 1e-12);
        CHECK(std::abs(commutator_expectation(v, 0) - 1.0) < 1e-12);
    }
}

TEST_CASE("creation past the truncation overflows") {
    const ModeSet ms({+1}, 3);
    auto v = n_photon_state(ms, 0, 3);
    CHECK_THROWS_WITH(apply_create(v, 0), doctest::Contains("truncation overflow"));
    CHECK_THROWS_AS(n_photon_state(ms, 0, 4), Error);
}

TEST_CASE("annihilating the vacuum gives the zero vector") {
    const auto ms = ModeSet::transverse(2);
    CHECK(apply_annihilate(vacuum(ms), 1).empty());
}

TEST_CASE("distinct modes commute") {
    const auto ms = ModeSet::transverse(3);
    auto v = apply_create(apply_create(vacuum(ms), 0), 2);
    v = v + apply_create(vacuum(ms), 1);
    v *= 1.0 / std::sqrt(2.0);
    for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t n = 0; n < 3; ++n) {
            CHECK(std::abs(annihilator_commutator_expectation(v, m, n)) < 1e-14);
            CHECK(std::abs(creator_commutator_expectation(v, m, n)) < 1e-14);
            if (m != n) CHECK(std::abs(mixed_commutator_expectation(v, m, n)) < 1e-14);
        }
}

TEST_CASE("indefinite metric flips odd occupations of negative modes") {
    const ModeSet ms({+1, -1});
    const auto one = n_photon_state(ms, 1, 1);
    const auto two = n_photon_state(ms, 1, 2);
    CHECK(std::abs(metric_inner_product(one, one) + 1.0) < 1e-15);
    CHECK(std::abs(metric_inner_product(two, two) - 1.0) < 1e-15);
    CHECK(std::abs(inner_product(one, one) - 1.0) < 1e-15);
    CHECK(std::abs(commutator_expectation(one, 1) + 1.0) < 1e-12);
    CHECK(std::abs(commutator_expectation(two, 1) + 1.0) < 1e-12);
    CHECK(std::abs(commutator_expectation(n_photon_state(ms, 0, 3), 0) - 1.0) < 1e-12);
}

TEST_CASE("commutator expectation needs a normalized state") {
    const auto ms = ModeSet::transverse(1);
    auto v = n_photon_state(ms, 0, 2);
    v *= 2.0;
    CHECK_THROWS_WITH(commutator_expectation(v, 0), doctest::Contains("unnormalized"));
}

TEST_CASE("superposition expectations are random-state invariant") {
    auto g = support::rng(5);
    std::normal_distribution<double> nd;
    const auto ms = ModeSet::transverse(1);
    for (int trial = 0; trial < 20; ++trial) {
        FockVector v(ms);
        for (int n = 0; n <= 8; ++n) v = v + [&] {
            auto s = n_photon_state(ms, 0, n);
            s *= cplx(nd(g), nd(g));
            return s;
        }();
        v *= 1.0 / std::sqrt(inner_product(v, v).real());
        CHECK(std::abs(commutator_expectation(v, 0) - 1.0) < 1e-12);
    }
}

TEST_CASE("longitudinal and scalar contributions cancel when tied") {
    const auto grid = mode_space::WaveVectorGrid::centered({8, 8, 8}, Vec3::Constant(0.5));
    ScalarSpectrum par{grid, std::vector<cplx>(grid.size())};
    for (std::size_t f = 0; f < grid.size(); ++f)
        par.c[f] = grid.masked(f) ? cplx{} : cplx(std::exp(-grid.k(f).squaredNorm()), 0.1 * grid.k(f)[2]);
    CHECK(longitudinal_cancellation_residual(par, par) <= 1e-12);
    auto off = par;
    for (auto& c : off.c) c *= 0.9;
    const double r = longitudinal_cancellation_residual(par, off);
    CHECK(r > 0.0);
    CHECK(std::abs(r - (1.0 - 0.81) * mode_contraction(par)) < 1e-14);

    ScalarSpectrum other{mode_space::WaveVectorGrid::centered({4, 4, 4}, Vec3::Constant(0.5)), {}};
    other.c.assign(other.grid.size(), cplx{});
    CHECK_THROWS_WITH(longitudinal_cancellation_residual(par, other), doctest::Contains("grid mismatch"));
}
