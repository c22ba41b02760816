#include "photonlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "photonlab/summation.hpp"

namespace photonlab::observables {

using density::DensityField;
using field::SpatialGrid;
using mode_space::PhotonSpectrum;

std::vector<double> integrate(const DensityField& d) {
    std::vector<double> out;
    out.reserve(d.components.size());
    const double vol = d.grid.cell_volume();
    for (const auto& c : d.components) out.push_back(vol * pairwise_sum(c));
    return out;
}

Vec3 centroid(const DensityField& d) {
    const auto& g = d.grid;
    const auto& w = d.components.at(0);
    const Vec3 box = g.box_length();
    Vec3 out;
    for (int a = 0; a < 3; ++a) {
        if (g.extent()[a] == 1) {
            out[a] = g.origin()[a];
            continue;
        }
        const double kappa = kTwoPi / box[a];
        const double s = pairwise_sum(w.size(), [&](std::size_t j) { return w[j] * std::sin(kappa * g.x(j)[a]); });
        const double c = pairwise_sum(w.size(), [&](std::size_t j) { return w[j] * std::cos(kappa * g.x(j)[a]); });
        double mean = std::atan2(s, c) / kappa;
        // keep the result inside the box range [origin, origin + L)
        while (mean < g.origin()[a]) mean += box[a];
        while (mean >= g.origin()[a] + box[a]) mean -= box[a];
        out[a] = mean;
    }
    return out;
}

namespace {

Vec3 min_image(Vec3 d, const SpatialGrid& g) {
    const Vec3 box = g.box_length();
    for (int a = 0; a < 3; ++a) {
        if (g.extent()[a] == 1) {
            d[a] = 0.0;
            continue;
        }
        d[a] -= box[a] * std::round(d[a] / box[a]);
    }
    return d;
}

double resolved_min_box(const SpatialGrid& g) {
    double m = std::numeric_limits<double>::infinity();
    const Vec3 box = g.box_length();
    for (int a = 0; a < 3; ++a)
        if (g.extent()[a] > 1) m = std::min(m, box[a]);
    return m;
}

double resolved_mean_spacing(const SpatialGrid& g) {
    double sum = 0.0;
    int count = 0;
    for (int a = 0; a < 3; ++a)
        if (g.extent()[a] > 1) {
            sum += g.delta_x()[a];
            ++count;
        }
    return count > 0 ? sum / count : 0.0;
}

}  // namespace

ObservableReport expectations(const PhotonSpectrum& s, const SpatialGrid& grid, double t) {
    const double norm = std::real(mode_space::scalar_product(s, s));
    if (std::abs(norm - 1.0) > 1e-8) throw Error("unnormalized");
    const auto f = field::synthesize(s, grid, t);
    const auto rho = density::number_density(f);
    const auto four = density::four_momentum_density(f);
    const auto hel = density::helicity_density(f);

    ObservableReport r;
    r.number = integrate(rho)[0];
    const auto p = integrate(four);
    r.energy = p[0];
    r.momentum = Vec3(p[1], p[2], p[3]);
    r.helicity = integrate(hel)[0];
    r.mean_position = centroid(rho);
    return r;
}

double continuity_residual(const PhotonSpectrum& s, const SpatialGrid& grid, double t, double dt) {
    if (!(dt > 0.0)) throw Error("continuity residual: dt must be positive");
    const auto& g = s.grid();
    double peak = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f)
        peak = std::max({peak, std::abs(s.amplitude(+1, f)), std::abs(s.amplitude(-1, f))});
    double omega_max = 0.0;
    for (std::size_t f = 0; f < g.size(); ++f)
        if (std::max(std::abs(s.amplitude(+1, f)), std::abs(s.amplitude(-1, f))) > 1e-12 * peak)
            omega_max = std::max(omega_max, g.omega(f));
    if (omega_max * dt > 0.01)
        spdlog::warn("continuity residual: omega_max dt = {} exceeds 0.01", omega_max * dt);

    const auto later = density::number_density(field::synthesize(s, grid, t + dt));
    const auto earlier = density::number_density(field::synthesize(s, grid, t - dt));
    const auto div_j = density::current_divergence(field::synthesize(s, grid, t));

    const std::size_t n = grid.size();
    const double num = std::sqrt(pairwise_sum(n, [&](std::size_t j) {
        const double drho = (later.components[0][j] - earlier.components[0][j]) / (2.0 * dt);
        const double r = drho + div_j[j];
        return r * r;
    }));
    const double den = std::sqrt(pairwise_sum(n, [&](std::size_t j) { return div_j[j] * div_j[j]; }));
    // Both terms at rounding level relative to the natural scale omega ||rho||
    // (a uniform single mode): the residual is defined as zero.
    const double scale = omega_max * std::sqrt(pairwise_sum(n, [&](std::size_t j) {
                             return later.components[0][j] * later.components[0][j];
                         }));
    if (den <= 1e-10 * scale && num <= 1e-10 * scale) return 0.0;
    return num / den;
}

double edge_fraction(const DensityField& d, double band) {
    const auto& g = d.grid;
    const auto& w = d.components.at(0);
    const Vec3 box = g.box_length();
    const Vec3 center = g.origin() + 0.5 * box;
    const double total = pairwise_sum(w.size(), [&](std::size_t j) { return std::abs(w[j]); });
    if (total == 0.0) return 0.0;
    const double edge = pairwise_sum(w.size(), [&](std::size_t j) {
        const Vec3 x = g.x(j);
        for (int a = 0; a < 3; ++a) {
            if (g.extent()[a] == 1) continue;
            if (std::abs(x[a] - center[a]) > (0.5 - band) * box[a]) return std::abs(w[j]);
        }
        return 0.0;
    });
    return edge / total;
}

double transport_speed(const PhotonSpectrum& s, const SpatialGrid& grid, double t0, double t1) {
    if (t1 == t0) throw Error("zero interval");
    const auto rho0 = density::number_density(field::synthesize(s, grid, t0));
    const auto rho1 = density::number_density(field::synthesize(s, grid, t1));
    constexpr double kEdgeTolerance = 1e-6;
    if (edge_fraction(rho0) > kEdgeTolerance || edge_fraction(rho1) > kEdgeTolerance) throw Error("wraparound");
    const Vec3 shift = min_image(centroid(rho1) - centroid(rho0), grid);
    return shift.norm() / std::abs(t1 - t0);
}

LocalizationWidth mass_radius(const DensityField& d, double fraction) {
    const auto& g = d.grid;
    const auto& w = d.components.at(0);
    const double total = pairwise_sum(w.size(), [&](std::size_t j) { return std::max(w[j], 0.0); });
    if (!(total > 0.0) || !std::isfinite(total)) throw Error("non-normalizable density");
    const Vec3 c = centroid(d);
    std::vector<std::pair<double, double>> shells(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        shells[j] = {min_image(g.x(j) - c, g).norm(), std::max(w[j], 0.0) / total};
    std::sort(shells.begin(), shells.end());

    // Each cell's mass is spread uniformly over [r - h/2, r + h/2], which
    // makes the cumulative mass continuous in the radius.
    const double h = resolved_mean_spacing(g);
    auto mass_within = [&](double radius) {
        return pairwise_sum(shells.size(), [&](std::size_t j) {
            const double lo = shells[j].first - 0.5 * h;
            const double frac = h > 0.0 ? std::clamp((radius - lo) / h, 0.0, 1.0) : (radius >= shells[j].first);
            return frac * shells[j].second;
        });
    };
    double lo = 0.0;
    double hi = shells.back().first + h;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_within(mid) >= fraction ? hi : lo) = mid;
    }
    return {hi, hi >= 0.45 * resolved_min_box(g)};
}

std::map<std::string, LocalizationWidth> localization_widths(const std::vector<DensityField>& densities) {
    std::map<std::string, LocalizationWidth> out;
    for (const auto& d : densities) out[std::string(density::to_string(d.kind))] = mass_radius(d, 0.99);
    return out;
}

double axis_occupancy(const DensityField& d, double fraction) {
    const auto& g = d.grid;
    const auto& w = d.components.at(0);
    const Vec3 box = g.box_length();
    const Vec3 c = centroid(d);
    const double total = pairwise_sum(w.size(), [&](std::size_t j) { return std::max(w[j], 0.0); });
    if (!(total > 0.0) || !std::isfinite(total)) throw Error("non-normalizable density");
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
        const std::size_t n = g.extent()[a];
        if (n == 1) continue;
        std::vector<double> marginal(n, 0.0);
        for (std::size_t j = 0; j < w.size(); ++j) marginal[unflatten(g.extent(), j)[a]] += std::max(w[j], 0.0);
        const double h = g.delta_x()[a];
        std::vector<double> dist(n);
        for (std::size_t i = 0; i < n; ++i) {
            double dx = g.origin()[a] + static_cast<double>(i) * h - c[a];
            dist[i] = std::abs(dx - box[a] * std::round(dx / box[a]));
        }
        auto mass_within = [&](double half) {
            return pairwise_sum(n, [&](std::size_t i) {
                       return std::clamp((half - dist[i] + 0.5 * h) / h, 0.0, 1.0) * marginal[i];
                   }) / total;
        };
        double lo = 0.0;
        double hi = 0.5 * box[a];
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mass_within(mid) >= fraction ? hi : lo) = mid;
        }
        worst = std::max(worst, 2.0 * hi / box[a]);
    }
    return worst;
}

double lightcone_leak(const PhotonSpectrum& s, const SpatialGrid& grid, double radius, double t) {
    const auto rho0 = density::number_density(field::synthesize(s, grid, 0.0));
    const Vec3 x0 = centroid(rho0);
    const auto& w0 = rho0.components[0];
    const double vol = grid.cell_volume();
    const double total = vol * pairwise_sum(w0);
    const double inside = vol * pairwise_sum(w0.size(), [&](std::size_t j) {
                              return min_image(grid.x(j) - x0, grid).norm() <= radius ? w0[j] : 0.0;
                          });
    if (!(inside >= 0.999 * total)) throw Error("lightcone leak: initial concentration precondition unmet");

    const auto rho = t == 0.0 ? rho0 : density::number_density(field::synthesize(s, grid, t));
    const double cone = radius + std::abs(t);
    return vol * pairwise_sum(rho.components[0].size(), [&](std::size_t j) {
               return min_image(grid.x(j) - x0, grid).norm() > cone ? rho.components[0][j] : 0.0;
           });
}

}  // namespace photonlab::observables
