#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "photonlab/types.hpp"

/// Lorenz-gauge retarded potentials of a prescribed electric four-current,
/// in natural units (c = eps0 = mu0 = 1):
///   A^mu(x, t) = (1/4 pi) integral dx' J^mu(x', t - |x - x'|) / |x - x'|.
namespace photonlab::retarded {

/// Regular lattice of sample points origin + m * spacing.
struct Lattice {
    Extent3 n{1, 1, 1};
    Vec3 spacing = Vec3::Ones();
    Vec3 origin = Vec3::Zero();

    std::size_t size() const { return extent_size(n); }
    Vec3 point(std::size_t flat) const;
    double cell_volume() const { return spacing.prod(); }
};

struct TimeAxis {
    std::size_t count = 0;
    double t0 = 0.0;
    double dt = 1.0;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double end() const { return time(count - 1); }
};

/// (c rho, J) sampled at lattice cell centres on a uniform time axis.
class SourceCurrent {
public:
    SourceCurrent(Lattice lattice, TimeAxis axis);

    using Generator = std::function<std::pair<double, Vec3>(const Vec3& x, double t)>;
    static SourceCurrent from_function(const Lattice& lattice, const TimeAxis& axis, const Generator& fn);

    const Lattice& lattice() const { return lattice_; }
    const TimeAxis& time_axis() const { return axis_; }

    double charge(std::size_t it, std::size_t cell) const { return samples_[index(it, cell)][0]; }
    Vec3 current(std::size_t it, std::size_t cell) const;
    void set(std::size_t it, std::size_t cell, double c_rho, const Vec3& j);

    /// Four-current at a cell with linear interpolation in time; nullopt
    /// outside the sampled window.
    std::optional<Eigen::Vector4d> interpolate(std::size_t cell, double t) const;

    bool active(std::size_t cell) const { return active_[cell] != 0; }

    /// ||d_t rho + div J||_2 / max(||div J||_2, eps) with centred differences
    /// (zero outside the lattice), over interior time samples.
    double conservation_residual() const;

private:
    std::size_t index(std::size_t it, std::size_t cell) const { return it * lattice_.size() + cell; }

    Lattice lattice_;
    TimeAxis axis_;
    std::vector<Eigen::Vector4d> samples_;
    std::vector<char> active_;
};

struct RetardedOptions {
    /// Distances below this are clamped to it. Unset: an evaluation point
    /// inside an active source cell is an error.
    std::optional<double> regularization_radius;
};

/// Half the smallest source cell spacing.
RetardedOptions default_options(const SourceCurrent& src);

struct PotentialField {
    std::vector<Vec3> points;
    std::vector<double> times;
    /// Indexed [it * points.size() + ip].
    std::vector<double> phi_over_c;
    std::vector<Vec3> A;
    /// Present when points enumerate a lattice in flat order.
    std::optional<Lattice> stencil;

    std::size_t at(std::size_t it, std::size_t ip) const { return it * points.size() + ip; }
};

PotentialField retarded_potential(const SourceCurrent& src, std::span<const Vec3> points,
                                  std::span<const double> times, const RetardedOptions& options);
PotentialField retarded_potential(const SourceCurrent& src, const Lattice& stencil, std::span<const double> times,
                                  const RetardedOptions& options);

/// Samples an analytic potential (phi/c, A) on a stencil.
PotentialField potential_from_function(const Lattice& stencil, std::span<const double> times,
                                       const SourceCurrent::Generator& fn);

/// ||(1/c^2) d_t phi + div A||_2 / ||div A||_2 over interior stencil points
/// and time slices; zero when both vanish.
double gauge_residual(const PotentialField& pf);

struct FieldSample {
    std::size_t time_index;
    std::size_t point_index;
    Vec3 E;
    Vec3 B;
    /// F^{mu nu} = d^mu A^nu - d^nu A^mu with d^mu = (d_ct, -grad).
    Eigen::Matrix4d faraday;
};

/// E = -d_t A - grad phi and B = curl A from centred differences at every
/// interior stencil point and time slice, read off the Faraday tensor.
std::vector<FieldSample> fields_from_potential(const PotentialField& pf);

}  // namespace photonlab::retarded
