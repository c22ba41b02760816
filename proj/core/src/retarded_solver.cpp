#include "photonlab/retarded_solver.hpp"

#include <algorithm>
#include <cmath>

#include "photonlab/parallel.hpp"
#include "photonlab/summation.hpp"

namespace photonlab::retarded {

Vec3 Lattice::point(std::size_t flat) const {
    const auto m = unflatten(n, flat);
    return {origin[0] + static_cast<double>(m[0]) * spacing[0], origin[1] + static_cast<double>(m[1]) * spacing[1],
            origin[2] + static_cast<double>(m[2]) * spacing[2]};
}

SourceCurrent::SourceCurrent(Lattice lattice, TimeAxis axis)
    : lattice_(lattice), axis_(axis), samples_(lattice.size() * axis.count, Eigen::Vector4d::Zero()),
      active_(lattice.size(), 0) {
    if (axis_.count < 2 || !(axis_.dt > 0.0)) throw Error("source current: need >= 2 time samples with dt > 0");
    for (int a = 0; a < 3; ++a)
        if (lattice_.n[a] == 0 || !(lattice_.spacing[a] > 0.0)) throw Error("source current: invalid lattice");
}

SourceCurrent SourceCurrent::from_function(const Lattice& lattice, const TimeAxis& axis, const Generator& fn) {
    SourceCurrent src(lattice, axis);
    for (std::size_t it = 0; it < axis.count; ++it)
        for (std::size_t c = 0; c < lattice.size(); ++c) {
            const auto [rho, j] = fn(lattice.point(c), axis.time(it));
            src.set(it, c, rho, j);
        }
    return src;
}

Vec3 SourceCurrent::current(std::size_t it, std::size_t cell) const {
    const auto& s = samples_[index(it, cell)];
    return {s[1], s[2], s[3]};
}

void SourceCurrent::set(std::size_t it, std::size_t cell, double c_rho, const Vec3& j) {
    if (it >= axis_.count || cell >= lattice_.size()) throw Error("source current: index out of range");
    samples_[index(it, cell)] = Eigen::Vector4d(c_rho, j[0], j[1], j[2]);
    if (c_rho != 0.0 || j[0] != 0.0 || j[1] != 0.0 || j[2] != 0.0) active_[cell] = 1;
}

std::optional<Eigen::Vector4d> SourceCurrent::interpolate(std::size_t cell, double t) const {
    const double u = (t - axis_.t0) / axis_.dt;
    const double last = static_cast<double>(axis_.count - 1);
    constexpr double kSlack = 1e-9;
    if (u < -kSlack || u > last + kSlack) return std::nullopt;
    const double uc = std::clamp(u, 0.0, last);
    auto i0 = static_cast<std::size_t>(std::floor(uc));
    if (i0 >= axis_.count - 1) i0 = axis_.count - 2;
    const double frac = uc - static_cast<double>(i0);
    const auto& a = samples_[index(i0, cell)];
    const auto& b = samples_[index(i0 + 1, cell)];
    return a + frac * (b - a);
}

double SourceCurrent::conservation_residual() const {
    const auto& n = lattice_.n;
    auto sample = [&](std::size_t it, long i, long j, long l, int comp) {
        if (i < 0 || j < 0 || l < 0 || i >= static_cast<long>(n[0]) || j >= static_cast<long>(n[1]) ||
            l >= static_cast<long>(n[2]))
            return 0.0;
        return samples_[index(it, flat_index(n, i, j, l))][comp];
    };
    std::vector<double> residual, divergence;
    for (std::size_t it = 1; it + 1 < axis_.count; ++it)
        for (long i = 0; i < static_cast<long>(n[0]); ++i)
            for (long j = 0; j < static_cast<long>(n[1]); ++j)
                for (long l = 0; l < static_cast<long>(n[2]); ++l) {
                    const double drho =
                        (sample(it + 1, i, j, l, 0) - sample(it - 1, i, j, l, 0)) / (2.0 * axis_.dt);
                    const double div =
                        (sample(it, i + 1, j, l, 1) - sample(it, i - 1, j, l, 1)) / (2.0 * lattice_.spacing[0]) +
                        (sample(it, i, j + 1, l, 2) - sample(it, i, j - 1, l, 2)) / (2.0 * lattice_.spacing[1]) +
                        (sample(it, i, j, l + 1, 3) - sample(it, i, j, l - 1, 3)) / (2.0 * lattice_.spacing[2]);
                    residual.push_back((drho + div) * (drho + div));
                    divergence.push_back(div * div);
                }
    const double num = std::sqrt(pairwise_sum(residual));
    const double den = std::sqrt(pairwise_sum(divergence));
    return num / std::max(den, 1e-300);
}

RetardedOptions default_options(const SourceCurrent& src) {
    return RetardedOptions{0.5 * src.lattice().spacing.minCoeff()};
}

namespace {

Eigen::Vector4d potential_at(const SourceCurrent& src, const Vec3& x, double t, const RetardedOptions& options) {
    const auto& lat = src.lattice();
    const double weight = lat.cell_volume() / (4.0 * kPi);
    std::vector<Eigen::Vector4d> terms;
    terms.reserve(lat.size());
    for (std::size_t c = 0; c < lat.size(); ++c) {
        if (!src.active(c)) continue;
        const Vec3 d = x - lat.point(c);
        if (!options.regularization_radius) {
            const bool inside = std::abs(d[0]) < 0.5 * lat.spacing[0] && std::abs(d[1]) < 0.5 * lat.spacing[1] &&
                                std::abs(d[2]) < 0.5 * lat.spacing[2];
            if (inside) throw Error("retarded potential: evaluation point inside a source cell");
        }
        const double r = d.norm();
        const auto j = src.interpolate(c, t - r);
        if (!j) throw Error("retarded potential: retarded time outside source window");
        const double r_eff = options.regularization_radius ? std::max(r, *options.regularization_radius) : r;
        terms.push_back(*j * (weight / r_eff));
    }
    // pairwise reduction keeps the sum order fixed
    std::size_t n = terms.size();
    if (n == 0) return Eigen::Vector4d::Zero();
    while (n > 1) {
        for (std::size_t i = 0; i < n / 2; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
        if (n % 2 == 1) terms[n / 2] = terms[n - 1];
        n = (n + 1) / 2;
    }
    return terms[0];
}

}  // namespace

PotentialField retarded_potential(const SourceCurrent& src, std::span<const Vec3> points,
                                  std::span<const double> times, const RetardedOptions& options) {
    PotentialField pf;
    pf.points.assign(points.begin(), points.end());
    pf.times.assign(times.begin(), times.end());
    const std::size_t total = points.size() * times.size();
    pf.phi_over_c.assign(total, 0.0);
    pf.A.assign(total, Vec3::Zero());
    std::vector<std::string> failures(total);
    parallel_for(total, [&](std::size_t k) {
        const std::size_t it = k / points.size();
        const std::size_t ip = k % points.size();
        try {
            const Eigen::Vector4d v = potential_at(src, points[ip], times[it], options);
            pf.phi_over_c[k] = v[0];
            pf.A[k] = Vec3(v[1], v[2], v[3]);
        } catch (const Error& e) {
            failures[k] = e.what();
        }
    });
    for (const auto& msg : failures)
        if (!msg.empty()) throw Error(msg);
    return pf;
}

PotentialField retarded_potential(const SourceCurrent& src, const Lattice& stencil, std::span<const double> times,
                                  const RetardedOptions& options) {
    std::vector<Vec3> points(stencil.size());
    for (std::size_t p = 0; p < stencil.size(); ++p) points[p] = stencil.point(p);
    auto pf = retarded_potential(src, points, times, options);
    pf.stencil = stencil;
    return pf;
}

PotentialField potential_from_function(const Lattice& stencil, std::span<const double> times,
                                       const SourceCurrent::Generator& fn) {
    PotentialField pf;
    pf.stencil = stencil;
    pf.times.assign(times.begin(), times.end());
    for (std::size_t p = 0; p < stencil.size(); ++p) pf.points.push_back(stencil.point(p));
    pf.phi_over_c.resize(pf.points.size() * times.size());
    pf.A.resize(pf.phi_over_c.size());
    for (std::size_t it = 0; it < times.size(); ++it)
        for (std::size_t p = 0; p < pf.points.size(); ++p) {
            const auto [phi, a] = fn(pf.points[p], times[it]);
            pf.phi_over_c[pf.at(it, p)] = phi;
            pf.A[pf.at(it, p)] = a;
        }
    return pf;
}

namespace {

struct Stencil {
    const PotentialField& pf;
    const Lattice& lat;
    double dt;

    static Stencil check(const PotentialField& pf) {
        if (!pf.stencil) throw Error("insufficient stencil: points do not form a lattice");
        const auto& lat = *pf.stencil;
        for (int a = 0; a < 3; ++a)
            if (lat.n[a] < 3) throw Error("insufficient stencil: need 3 points per axis");
        if (pf.times.size() < 4) throw Error("insufficient stencil: need at least 4 time slices");
        const double dt = pf.times[1] - pf.times[0];
        for (std::size_t i = 1; i < pf.times.size(); ++i)
            if (std::abs(pf.times[i] - pf.times[i - 1] - dt) > 1e-9 * std::abs(dt))
                throw Error("insufficient stencil: time slices must be uniform");
        return {pf, lat, dt};
    }

    // d^mu A^nu as a 4x4 matrix at (it, i, j, l); A^0 = phi/c, c = 1.
    Eigen::Matrix4d gradient(std::size_t it, std::size_t i, std::size_t j, std::size_t l) const {
        auto four = [&](std::size_t t, std::size_t a, std::size_t b, std::size_t c) {
            const std::size_t k = pf.at(t, flat_index(lat.n, a, b, c));
            return Eigen::Vector4d(pf.phi_over_c[k], pf.A[k][0], pf.A[k][1], pf.A[k][2]);
        };
        Eigen::Matrix4d d;
        d.row(0) = ((four(it + 1, i, j, l) - four(it - 1, i, j, l)) / (2.0 * dt)).transpose();
        d.row(1) = (-(four(it, i + 1, j, l) - four(it, i - 1, j, l)) / (2.0 * lat.spacing[0])).transpose();
        d.row(2) = (-(four(it, i, j + 1, l) - four(it, i, j - 1, l)) / (2.0 * lat.spacing[1])).transpose();
        d.row(3) = (-(four(it, i, j, l + 1) - four(it, i, j, l - 1)) / (2.0 * lat.spacing[2])).transpose();
        return d;
    }

    template <typename F>
    void for_interior(F&& body) const {
        for (std::size_t it = 1; it + 1 < pf.times.size(); ++it)
            for (std::size_t i = 1; i + 1 < lat.n[0]; ++i)
                for (std::size_t j = 1; j + 1 < lat.n[1]; ++j)
                    for (std::size_t l = 1; l + 1 < lat.n[2]; ++l) body(it, i, j, l);
    }
};

}  // namespace

double gauge_residual(const PotentialField& pf) {
    const auto st = Stencil::check(pf);
    std::vector<double> residual, divergence;
    st.for_interior([&](std::size_t it, std::size_t i, std::size_t j, std::size_t l) {
        const auto d = st.gradient(it, i, j, l);
        // d_t (phi/c) / c + div A; rows 1..3 hold -grad.
        const double div_a = -(d(1, 1) + d(2, 2) + d(3, 3));
        const double r = d(0, 0) + div_a;
        residual.push_back(r * r);
        divergence.push_back(div_a * div_a);
    });
    const double num = std::sqrt(pairwise_sum(residual));
    const double den = std::sqrt(pairwise_sum(divergence));
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

std::vector<FieldSample> fields_from_potential(const PotentialField& pf) {
    const auto st = Stencil::check(pf);
    std::vector<FieldSample> out;
    st.for_interior([&](std::size_t it, std::size_t i, std::size_t j, std::size_t l) {
        const Eigen::Matrix4d d = st.gradient(it, i, j, l);
        FieldSample s;
        s.time_index = it;
        s.point_index = flat_index(st.lat.n, i, j, l);
        s.faraday = d - d.transpose();
        s.E = Vec3(s.faraday(1, 0), s.faraday(2, 0), s.faraday(3, 0));
        s.B = Vec3(-s.faraday(2, 3), -s.faraday(3, 1), -s.faraday(1, 2));
        out.push_back(s);
    });
    return out;
}

}  // namespace photonlab::retarded
