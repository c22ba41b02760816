#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photonlab/densities.hpp"
#include "photonlab/types.hpp"

namespace photonlab::runner {

enum class PacketKind { gaussian, single_mode, localized, collinear };

struct GridSpec {
    Extent3 n{64, 64, 64};
    Vec3 delta_k{0.5, 0.5, 0.5};
    /// Unset: centred grid.
    std::optional<Vec3> k_min;
};

struct PacketSpec {
    PacketKind kind = PacketKind::gaussian;
    Vec3 k0{6.0, 0.0, 8.0};
    double sigma = 1.0;
    std::array<cplx, 2> helicity_weights{cplx(1.0), cplx(0.0)};
    /// Centre of the localized stand-in state.
    Vec3 x0 = Vec3::Zero();
};

/// Axis-aligned plane for CSV slices, e.g. "z=0.5".
struct SlicePlane {
    int axis = 2;
    double value = 0.0;
};

struct OutputSpec {
    std::vector<density::DensityKind> densities;
    std::vector<SlicePlane> slices;
    bool summary = true;
    bool raw_fields = false;
    std::string directory = "photonlab_out";
};

struct UnitsSpec {
    bool si = false;
    /// Metres per natural length unit when exporting in SI.
    double length_scale = 1e-6;
};

struct Tolerances {
    double number = 1e-8;
    double current = 1e-8;
    double energy = 1e-8;
    double momentum = 1e-8;
    double synthesis = 1e-10;
    /// Largest fraction of the box a packet may span along any axis.
    double guard_band = 0.25;
};

struct ScenarioConfig {
    GridSpec grid;
    PacketSpec packet;
    std::vector<double> times{0.0};
    OutputSpec output;
    UnitsSpec units;
    Tolerances tolerances;
    std::uint64_t seed = 1;
};

/// Parse failure with the offending line (1-based, 0 when not line-bound)
/// and key.
class ConfigError : public Error {
public:
    ConfigError(std::size_t line, std::string key, const std::string& message);
    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

/// Flat "section.key = value" text; '#' starts a comment; arrays are comma
/// lists. Unknown keys are rejected.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

std::string_view to_string(PacketKind kind);
SlicePlane parse_plane(std::string_view text);

}  // namespace photonlab::runner
