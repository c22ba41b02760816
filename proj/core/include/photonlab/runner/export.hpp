#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "photonlab/densities.hpp"
#include "photonlab/retarded_solver.hpp"
#include "photonlab/runner/config.hpp"

namespace photonlab::runner {

/// Multiplier taking a natural-unit density of this kind to SI, plus the unit
/// label. Natural units give (1, "natural").
struct UnitScale {
    double factor = 1.0;
    std::string label = "natural";
};

UnitScale density_unit(density::DensityKind kind, const UnitsSpec& units);
/// Length and time conversions (identity in natural units).
UnitScale length_unit(const UnitsSpec& units);
UnitScale time_unit(const UnitsSpec& units);

/// One text line
///   photonlab-array v1 kind=<k> shape=<nx>,<ny>,<nz> components=<c>
///     dtype=float64-le units=<u> t=<t> origin=<..> spacing=<..>
/// followed by components * nx*ny*nz little-endian doubles, component-major,
/// z fastest within a component.
std::string encode_array(const density::DensityField& d, const UnitsSpec& units);

/// Positive-frequency A+, E+, B+ as 18 components (Re, Im per Cartesian
/// component, in that order), same layout as encode_array. Values stay in
/// natural units.
std::string encode_fields(const field::FieldSnapshot& f, const UnitsSpec& units);

/// CSV of every component on the grid plane nearest to `plane`; columns are
/// the two in-plane coordinates then one column per component.
std::string encode_slice_csv(const density::DensityField& d, const SlicePlane& plane, const UnitsSpec& units);

/// Writes to a sibling temporary, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Reads a whitespace-separated columnar source: one row per sample
///   t x y z c_rho jx jy jz
/// with '#' comment lines. Samples must fill a regular lattice times a
/// uniform time axis.
retarded::SourceCurrent read_source_columns(std::istream& in);
std::string write_source_columns(const retarded::SourceCurrent& src);

}  // namespace photonlab::runner
