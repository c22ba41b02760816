#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "photonlab/densities.hpp"
#include "photonlab/field_synthesis.hpp"
#include "photonlab/mode_space.hpp"
#include "photonlab/runner/config.hpp"

namespace photonlab::runner {

struct CheckOutcome {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct Artifact {
    std::string file;
    std::string sha256;
};

struct ScenarioResult {
    /// 0 iff every check passed.
    int exit_code = 0;
    std::vector<CheckOutcome> checks;
    std::vector<Artifact> artifacts;
    std::filesystem::path summary_path;
    std::string summary;

    std::vector<std::string> failed_checks() const;
};

mode_space::WaveVectorGrid build_grid(const GridSpec& spec);

/// Throws ConfigError when the packet does not fit the grid (for example a
/// collinear packet on a grid with transverse extent).
mode_space::PhotonSpectrum build_spectrum(const ScenarioConfig& cfg);

/// Density of any kind from a snapshot. Angular momentum returns the total
/// about the origin; bb_energy and lp_number need a pure-helicity spectrum.
density::DensityField compute_density(density::DensityKind kind, const field::FieldSnapshot& f,
                                      const mode_space::PhotonSpectrum& s);

/// Runs the scenario, writes the requested arrays and the summary into
/// cfg.output.directory. Guard-band and tolerance failures are reported as
/// failed checks and a nonzero exit code.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Writes one CSV slice of `kind` per configured time; returns the paths.
std::vector<std::filesystem::path> export_slice(const ScenarioConfig& cfg, density::DensityKind kind,
                                                const SlicePlane& plane);

}  // namespace photonlab::runner
