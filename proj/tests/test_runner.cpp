#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "photonlab/runner/config.hpp"
#include "photonlab/runner/export.hpp"
#include "photonlab/runner/scenario.hpp"
#include "support.hpp"

using namespace photonlab;
using namespace photonlab::runner;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("photonlab_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

ScenarioConfig small_config(const fs::path& dir) {
    auto cfg = parse_config(
        "grid.n = 32, 32, 32\n"
        "grid.delta_k = 0.5, 0.5, 0.5\n"
        "packet.k0 = 4, 0, 0\n"
        "packet.sigma = 1\n"
        "packet.helicity_weights = 1, 0\n"
        "time.t_list = 0, 0.5\n"
        "output.densities = number, current\n"
        "output.slices = z=0\n"
        "seed = 3\n");
    cfg.output.directory = dir.string();
    return cfg;
}

}  // namespace

TEST_CASE("config parses every key") {
    const auto cfg = parse_config(
        "# comment\n"
        "grid.n = 8, 4, 2\n"
        "grid.delta_k = 0.5, 0.25, 1\n"
        "grid.k_min = -2, -0.5, 0.5   # trailing\n"
        "packet.kind = gaussian\n"
        "packet.k0 = 1, 2, 3\n"
        "packet.sigma = 0.7\n"
        "packet.x0 = 0.1, 0.2, 0.3\n"
        "packet.helicity_weights = 0.6, 0, 0, 0.8\n"
        "time.t0 = 0\n"
        "time.t1 = 1\n"
        "time.steps = 4\n"
        "output.densities = number, helicity\n"
        "output.slices = z=0.5, x=-1\n"
        "output.summary = false\n"
        "output.raw_fields = true\n"
        "output.directory = somewhere\n"
        "units.system = si\n"
        "units.length_scale = 1e-9\n"
        "tolerance.number = 1e-9\n"
        "tolerance.current = 2e-9\n"
        "tolerance.energy = 3e-9\n"
        "tolerance.momentum = 4e-9\n"
        "tolerance.synthesis = 5e-11\n"
        "tolerance.guard_band = 0.3\n"
        "seed = 42\n");
    CHECK(cfg.grid.n == Extent3{8, 4, 2});
    CHECK(cfg.grid.delta_k[1] == 0.25);
    REQUIRE(cfg.grid.k_min);
    CHECK((*cfg.grid.k_min)[2] == 0.5);
    CHECK(cfg.packet.kind == PacketKind::gaussian);
    CHECK(cfg.packet.k0[2] == 3.0);
    CHECK(cfg.packet.sigma == 0.7);
    CHECK(cfg.packet.x0[1] == 0.2);
    CHECK(cfg.packet.helicity_weights[1] == cplx(0, 0.8));
    REQUIRE(cfg.times.size() == 5);
    CHECK(cfg.times[1] == 0.25);
    CHECK(cfg.times[4] == 1.0);
    REQUIRE(cfg.output.densities.size() == 2);
    CHECK(cfg.output.densities[1] == density::DensityKind::helicity);
    REQUIRE(cfg.output.slices.size() == 2);
    CHECK(cfg.output.slices[1].axis == 0);
    CHECK(cfg.output.slices[1].value == -1.0);
    CHECK_FALSE(cfg.output.summary);
    CHECK(cfg.output.raw_fields);
    CHECK(cfg.output.directory == "somewhere");
    CHECK(cfg.units.si);
    CHECK(cfg.units.length_scale == 1e-9);
    CHECK(cfg.tolerances.number == 1e-9);
    CHECK(cfg.tolerances.current == 2e-9);
    CHECK(cfg.tolerances.energy == 3e-9);
    CHECK(cfg.tolerances.momentum == 4e-9);
    CHECK(cfg.tolerances.synthesis == 5e-11);
    CHECK(cfg.tolerances.guard_band == 0.3);
    CHECK(cfg.seed == 42);
}

TEST_CASE("config errors name the line and key") {
    try {
        parse_config("grid.n = 8, 8, 8\npacket.sigma_x = 1\n");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(e.key() == "packet.sigma_x");
        CHECK(std::string(e.what()).find("sigma_x") != std::string::npos);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_WITH(parse_config("seed = 1\nseed = 2\n"), doctest::Contains("duplicate"));
    CHECK_THROWS_WITH(parse_config("grid.n = 8, 8\n"), doctest::Contains("grid.n"));
    CHECK_THROWS_WITH(parse_config("packet.kind = sphere\n"), doctest::Contains("packet.kind"));
    CHECK_THROWS_WITH(parse_config("packet.sigma = -1\n"), doctest::Contains("packet.sigma"));
    CHECK_THROWS_WITH(parse_config("time.t0 = 0\n"), doctest::Contains("time."));
    CHECK_THROWS_WITH(parse_config("time.t_list = 0\ntime.t0 = 0\ntime.t1 = 1\ntime.steps = 2\n"), doctest::Contains("time."));
    CHECK_THROWS_WITH(parse_config("output.densities = charge\n"), doctest::Contains("output.densities"));
    CHECK_THROWS_WITH(parse_config("just text\n"), doctest::Contains("line 1"));
    CHECK_THROWS_WITH(parse_plane("w=1"), doctest::Contains("axis"));
    CHECK(parse_plane("y=-0.25").axis == 1);
}

TEST_CASE("collinear packets require a line grid") {
    auto cfg = parse_config("grid.n = 4, 4, 64\npacket.kind = collinear\npacket.k0 = 0, 0, 5\n");
    CHECK_THROWS_AS(build_spectrum(cfg), ConfigError);
}

TEST_CASE("sha256 of a known vector") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("atomic write leaves only the target") {
    const auto dir = scratch("atomic");
    fs::create_directories(dir);
    write_atomic(dir / "a.txt", "first");
    write_atomic(dir / "a.txt", "second");
    CHECK(slurp(dir / "a.txt") == "second");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    CHECK(files == 1);
    fs::remove_all(dir);
}

TEST_CASE("binary arrays decode as little-endian doubles") {
    const auto k = mode_space::WaveVectorGrid::centered({4, 2, 2}, Vec3::Constant(1.0));
    density::DensityField d{density::DensityKind::current, field::SpatialGrid::paired(k), 0.5, {}};
    for (int c = 0; c < 3; ++c) {
        d.components.emplace_back(16);
        for (std::size_t j = 0; j < 16; ++j) d.components[c][j] = 100.0 * c + j + 0.125;
    }
    const auto bytes = encode_array(d, {});
    const auto nl = bytes.find('\n');
    REQUIRE(nl != std::string::npos);
    const std::string header = bytes.substr(0, nl);
    CHECK(header.rfind("photonlab-array v1 ", 0) == 0);
    CHECK(header.find("kind=current") != std::string::npos);
    CHECK(header.find("shape=4,2,2") != std::string::npos);
    CHECK(header.find("components=3") != std::string::npos);
    CHECK(header.find("dtype=float64-le") != std::string::npos);
    CHECK(header.find("units=natural") != std::string::npos);
    REQUIRE(bytes.size() == nl + 1 + 3 * 16 * 8);
    for (std::size_t i = 0; i < 48; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= std::uint64_t(static_cast<unsigned char>(bytes[nl + 1 + 8 * i + b])) << (8 * b);
        double v;
        std::memcpy(&v, &bits, 8);
        CHECK(v == d.components[i / 16][i % 16]);
    }
    UnitsSpec si{true, 1e-6};
    const auto scaled = encode_array(d, si);
    CHECK(scaled.substr(0, scaled.find('\n')).find("units=natural") == std::string::npos);
}

TEST_CASE("slice CSV picks the nearest plane") {
    const auto k = mode_space::WaveVectorGrid::centered({4, 4, 4}, Vec3::Constant(kTwoPi / 4.0));
    const auto grid = field::SpatialGrid::paired(k);  // dx = 1, x in {-2..1}
    density::DensityField d{density::DensityKind::number, grid, 0.0, {std::vector<double>(64)}};
    for (std::size_t j = 0; j < 64; ++j) d.components[0][j] = grid.x(j)[2];
    const auto csv = encode_slice_csv(d, SlicePlane{2, 0.8}, {});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("#", 0) == 0);
    std::getline(in, line);
    CHECK(line == "x,y,c0");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) == 1.0);
    }
    CHECK(rows == 16);
}

TEST_CASE("source columns round trip") {
    const retarded::Lattice lat{{2, 2, 3}, Vec3(0.5, 0.5, 0.25), Vec3(-0.25, 0, 1)};
    auto src = retarded::SourceCurrent::from_function(lat, retarded::TimeAxis{3, 0.0, 0.1}, [](const Vec3& x, double t) {
        return std::pair<double, Vec3>(x[0] + t, Vec3(x[1], x[2] * t, -1.0));
    });
    std::istringstream in("# header\n" + write_source_columns(src));
    const auto back = read_source_columns(in);
    CHECK(back.lattice().n == lat.n);
    CHECK((back.lattice().spacing - lat.spacing).norm() < 1e-12);
    CHECK(back.time_axis().count == 3);
    for (std::size_t it = 0; it < 3; ++it)
        for (std::size_t c = 0; c < lat.size(); ++c) {
            CHECK(back.charge(it, c) == doctest::Approx(src.charge(it, c)));
            CHECK((back.current(it, c) - src.current(it, c)).norm() < 1e-12);
        }
    std::istringstream bad("0 0 0 0 1 2 3\n");
    CHECK_THROWS_WITH(read_source_columns(bad), doctest::Contains("expected 8 numbers"));
}

TEST_CASE("scenario run writes artifacts and a passing summary") {
    const auto dir = scratch("scenario");
    const auto cfg = small_config(dir);
    const auto r = run_scenario(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.failed_checks().empty());
    CHECK(fs::exists(dir / "summary.txt"));
    CHECK(r.summary.find("status = pass") != std::string::npos);
    for (const auto& c : r.checks)
        if (c.name.ends_with(".number")) CHECK(c.value <= 1e-8);
    for (const auto& a : r.artifacts) CHECK(sha256_hex(slurp(dir / a.file)) == a.sha256);
    CHECK(r.artifacts.size() == 8);

    const auto again = run_scenario(cfg);
    CHECK(again.summary == r.summary);

    const auto slices = export_slice(cfg, density::DensityKind::energy, parse_plane("y=0"));
    REQUIRE(slices.size() == 2);
    CHECK(slices[0].filename() == "energy_t000_y_slice.csv");
    CHECK(fs::file_size(slices[1]) > 0);
    fs::remove_all(dir);
}

TEST_CASE("a packet wider than the guard band fails the run") {
    const auto dir = scratch("guard");
    auto cfg = small_config(dir);
    cfg.grid.delta_k = Vec3::Constant(1.5);
    cfg.packet.sigma = 0.6;
    const auto r = run_scenario(cfg);
    CHECK(r.exit_code != 0);
    const auto failed = r.failed_checks();
    CHECK(std::find(failed.begin(), failed.end(), "t000.guard_band") != failed.end());
    CHECK(r.summary.find("status = fail") != std::string::npos);
    fs::remove_all(dir);
}
