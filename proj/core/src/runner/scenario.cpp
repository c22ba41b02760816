#include "photonlab/runner/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "photonlab/observables.hpp"
#include "photonlab/runner/export.hpp"
#include "photonlab/version.hpp"

namespace photonlab::runner {

using density::DensityKind;
using mode_space::PhotonSpectrum;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string vec(const Vec3& v) { return num(v[0]) + "," + num(v[1]) + "," + num(v[2]); }

/// Ordered key = value lines.
class Summary {
public:
    void put(const std::string& key, const std::string& value) { out_ << key << " = " << value << "\n"; }
    void put(const std::string& key, double value) { put(key, num(value)); }
    void put(const std::string& key, const Vec3& value) { put(key, vec(value)); }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

double max_relative(const Vec3& value, const Vec3& oracle) {
    double worst = 0.0;
    const double floor = 1e-12 * std::max(oracle.norm(), 1e-300);
    for (int a = 0; a < 3; ++a) {
        const double d = std::abs(value[a] - oracle[a]);
        worst = std::max(worst, std::abs(oracle[a]) > floor ? d / std::abs(oracle[a]) : d / oracle.norm());
    }
    return worst;
}

bool pure_helicity(const PhotonSpectrum& s) {
    bool plus = false;
    bool minus = false;
    for (std::size_t f = 0; f < s.grid().size(); ++f) {
        plus = plus || s.amplitude(+1, f) != cplx{};
        minus = minus || s.amplitude(-1, f) != cplx{};
    }
    return plus != minus;
}

std::string time_tag(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "t%03zu", i);
    return buf;
}

}  // namespace

std::vector<std::string> ScenarioResult::failed_checks() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

mode_space::WaveVectorGrid build_grid(const GridSpec& spec) {
    if (spec.k_min) return {spec.n, spec.delta_k, *spec.k_min};
    return mode_space::WaveVectorGrid::centered(spec.n, spec.delta_k);
}

PhotonSpectrum build_spectrum(const ScenarioConfig& cfg) {
    const auto grid = build_grid(cfg.grid);
    const auto& p = cfg.packet;
    switch (p.kind) {
        case PacketKind::gaussian: return mode_space::gaussian_spectrum(grid, p.k0, p.sigma, p.helicity_weights);
        case PacketKind::single_mode: return mode_space::single_mode_spectrum(grid, p.k0, p.helicity_weights);
        case PacketKind::localized: return mode_space::localized_spectrum(grid, p.x0);
        case PacketKind::collinear: {
            if (grid.extent()[0] != 1 || grid.extent()[1] != 1)
                throw ConfigError(0, "grid.n", "collinear packets need extents 1,1,N");
            if (p.k0[0] != 0.0 || p.k0[1] != 0.0 || !(p.k0[2] > 0.0))
                throw ConfigError(0, "packet.k0", "collinear packets need k0 along +z");
            for (std::size_t f = 0; f < grid.size(); ++f) {
                const Vec3 k = grid.k(f);
                if (k[0] != 0.0 || k[1] != 0.0 || k[2] < 0.0)
                    throw ConfigError(0, "grid.k_min", "collinear grids must hold only k along +z");
            }
            return mode_space::gaussian_spectrum(grid, p.k0, p.sigma, p.helicity_weights);
        }
    }
    throw ConfigError(0, "packet.kind", "unsupported");
}

density::DensityField compute_density(DensityKind kind, const field::FieldSnapshot& f, const PhotonSpectrum& s) {
    switch (kind) {
        case DensityKind::number: return density::number_density(f);
        case DensityKind::current: return density::photon_current(f);
        case DensityKind::energy: return density::energy_density(f);
        case DensityKind::momentum: return density::momentum_density(f);
        case DensityKind::four_momentum: return density::four_momentum_density(f);
        case DensityKind::angular_momentum: return density::angular_momentum_density(f, Vec3::Zero()).total;
        case DensityKind::helicity: return density::helicity_density(f);
        case DensityKind::bb_energy: return density::bb_energy_density(density::photon_wave_fields(f, s), f.t);
        case DensityKind::lp_number: return density::lp_number_density(density::photon_wave_fields(f, s), f.t);
    }
    throw Error("unknown density kind");
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    const PhotonSpectrum s = build_spectrum(cfg);
    const auto& kgrid = s.grid();
    const auto xgrid = field::SpatialGrid::paired(kgrid);
    const auto oracle = mode_space::spectral_summary(s);
    const auto& tol = cfg.tolerances;
    const std::filesystem::path dir = cfg.output.directory;

    ScenarioResult result;
    Summary sum;
    auto check = [&](const std::string& name, double value, double tolerance) {
        const bool ok = std::isfinite(value) && value <= tolerance;
        result.checks.push_back({name, value, tolerance, ok});
        sum.put("check." + name + ".value", value);
        sum.put("check." + name + ".tolerance", tolerance);
        sum.put("check." + name, ok ? "pass" : "fail");
        if (!ok) spdlog::error("check {} failed: {} > {}", name, value, tolerance);
    };

    sum.put("photonlab.version", std::string(kVersion));
    sum.put("config.grid.n", std::to_string(kgrid.extent()[0]) + "," + std::to_string(kgrid.extent()[1]) + "," +
                                 std::to_string(kgrid.extent()[2]));
    sum.put("config.grid.delta_k", kgrid.delta_k());
    sum.put("config.grid.k_min", kgrid.k_min());
    sum.put("config.packet.kind", std::string(to_string(cfg.packet.kind)));
    sum.put("config.packet.k0", cfg.packet.k0);
    sum.put("config.packet.sigma", cfg.packet.sigma);
    sum.put("config.seed", std::to_string(cfg.seed));
    sum.put("config.units.system", cfg.units.si ? "si" : "natural");
    if (cfg.units.si) sum.put("config.units.length_scale", cfg.units.length_scale);
    sum.put("calibration.number_sign", std::to_string(density::number_sign()));
    sum.put("calibration.spin_sign", std::to_string(density::spin_sign()));
    sum.put("calibration.mode_density_scale", density::mode_density_scale());
    sum.put("state.physical", s.physical() ? "true" : "false");
    sum.put("oracle.number", oracle.number);
    sum.put("oracle.energy", oracle.energy);
    sum.put("oracle.momentum", oracle.momentum);
    sum.put("oracle.helicity", oracle.helicity);
    sum.put("oracle.current", oracle.current);

    const bool packet = cfg.packet.kind == PacketKind::gaussian || cfg.packet.kind == PacketKind::collinear;

    // Spot check of the FFT synthesis against direct quadrature.
    {
        const auto snap = field::synthesize(s, xgrid, cfg.times.front());
        double peak = 0.0;
        for (int c = 0; c < 3; ++c)
            for (const auto& v : snap.A_plus[c]) peak = std::max(peak, std::abs(v));
        std::mt19937_64 rng(cfg.seed);
        double worst = 0.0;
        std::string picked;
        for (int i = 0; i < 4; ++i) {
            const std::size_t j = static_cast<std::size_t>(rng() % xgrid.size());
            picked += (i ? "," : "") + std::to_string(j);
            const auto direct = field::synthesize_point(s, xgrid.x(j), cfg.times.front());
            for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(direct.A_plus[c] - snap.A_plus[c][j]));
        }
        sum.put("spot_check.indices", picked);
        check("synthesis.spot_check", peak > 0.0 ? worst / peak : worst, tol.synthesis);
    }

    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        const double t = cfg.times[i];
        const std::string tag = time_tag(i);
        const auto snap = field::synthesize(s, xgrid, t);
        const auto rho = density::number_density(snap);
        sum.put(tag + ".time", t);

        if (s.physical()) {
            const double n = observables::integrate(rho)[0];
            const auto j = observables::integrate(density::photon_current(snap));
            const auto p = observables::integrate(density::four_momentum_density(snap));
            const double h = observables::integrate(density::helicity_density(snap))[0];
            sum.put(tag + ".number", n);
            sum.put(tag + ".current", Vec3(j[0], j[1], j[2]));
            sum.put(tag + ".energy", p[0]);
            sum.put(tag + ".momentum", Vec3(p[1], p[2], p[3]));
            sum.put(tag + ".helicity", h);
            sum.put(tag + ".mean_position", observables::centroid(rho));
            check(tag + ".number", std::abs(n - 1.0), tol.number);
            check(tag + ".current", max_relative(Vec3(j[0], j[1], j[2]), oracle.current), tol.current);
            check(tag + ".energy", std::abs(p[0] - oracle.energy) / oracle.energy, tol.energy);
            check(tag + ".momentum", max_relative(Vec3(p[1], p[2], p[3]), oracle.momentum), tol.momentum);
            if (packet) check(tag + ".guard_band", observables::axis_occupancy(rho), tol.guard_band);
        }

        for (const auto kind : cfg.output.densities) {
            const auto d = kind == DensityKind::number ? rho : compute_density(kind, snap, s);
            const std::string base = std::string(density::to_string(kind)) + "_" + tag;
            const std::string bin = encode_array(d, cfg.units);
            write_atomic(dir / (base + ".bin"), bin);
            result.artifacts.push_back({base + ".bin", sha256_hex(bin)});
            for (std::size_t k = 0; k < cfg.output.slices.size(); ++k) {
                const std::string csv = encode_slice_csv(d, cfg.output.slices[k], cfg.units);
                const std::string name = base + "_slice" + std::to_string(k) + ".csv";
                write_atomic(dir / name, csv);
                result.artifacts.push_back({name, sha256_hex(csv)});
            }
        }
        if (cfg.output.raw_fields) {
            const std::string name = "fields_" + tag + ".bin";
            const std::string bin = encode_fields(snap, cfg.units);
            write_atomic(dir / name, bin);
            result.artifacts.push_back({name, sha256_hex(bin)});
        }
    }

    if (s.physical() && packet) {
        const double t0 = cfg.times.front();
        const double omega0 = cfg.packet.k0.norm();
        sum.put("report.localization_metric", "radius holding 99% of the positive integral about the centroid");
        const double r = observables::continuity_residual(s, xgrid, t0, 1e-3 / omega0);
        sum.put("report.continuity_residual_rel", r);
        sum.put("report.continuity_dt", 1e-3 / omega0);
        if (cfg.times.size() > 1) {
            try {
                sum.put("report.group_speed", observables::transport_speed(s, xgrid, t0, cfg.times.back()));
            } catch (const Error& e) {
                sum.put("report.group_speed", std::string("unavailable (") + e.what() + ")");
            }
        }
        const auto snap = field::synthesize(s, xgrid, t0);
        std::vector<density::DensityField> ds{density::number_density(snap)};
        if (pure_helicity(s)) {
            const auto w = density::photon_wave_fields(snap, s);
            ds.push_back(density::bb_energy_density(w, t0));
            ds.push_back(density::lp_number_density(w, t0));
            sum.put("report.omega_identity_residual", w.identity_residual);
        }
        for (const auto& [kind, w] : observables::localization_widths(ds)) {
            sum.put("report.localization_width." + kind, w.radius);
            sum.put("report.localization_width." + kind + ".box_limited", w.box_limited ? "true" : "false");
        }
        if (cfg.times.size() > 1) {
            const double radius = observables::mass_radius(ds.front(), 0.9995).radius;
            try {
                sum.put("report.lightcone_leak.radius", radius);
                sum.put("report.lightcone_leak", observables::lightcone_leak(s, xgrid, radius, cfg.times.back()));
            } catch (const Error& e) {
                sum.put("report.lightcone_leak", std::string("unavailable (") + e.what() + ")");
            }
        }
    }

    for (const auto& a : result.artifacts) sum.put("artifact." + a.file + ".sha256", a.sha256);
    const auto failed = result.failed_checks();
    std::string failed_list;
    for (const auto& f : failed) failed_list += (failed_list.empty() ? "" : ",") + f;
    sum.put("status", failed.empty() ? "pass" : "fail");
    sum.put("failed_checks", failed_list.empty() ? "none" : failed_list);

    result.summary = sum.str();
    result.exit_code = failed.empty() ? 0 : 1;
    if (cfg.output.summary) {
        result.summary_path = dir / "summary.txt";
        write_atomic(result.summary_path, result.summary);
    }
    return result;
}

std::vector<std::filesystem::path> export_slice(const ScenarioConfig& cfg, DensityKind kind, const SlicePlane& plane) {
    const PhotonSpectrum s = build_spectrum(cfg);
    const auto xgrid = field::SpatialGrid::paired(s.grid());
    static constexpr const char* axes = "xyz";
    std::vector<std::filesystem::path> out;
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        const auto snap = field::synthesize(s, xgrid, cfg.times[i]);
        const auto d = compute_density(kind, snap, s);
        const auto path = std::filesystem::path(cfg.output.directory) /
                          (std::string(density::to_string(kind)) + "_" + time_tag(i) + "_" + axes[plane.axis] +
                           "_slice.csv");
        write_atomic(path, encode_slice_csv(d, plane, cfg.units));
        out.push_back(path);
    }
    return out;
}

}  // namespace photonlab::runner
