#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

#include "photonlab/densities.hpp"
#include "photonlab/field_synthesis.hpp"
#include "photonlab/retarded_solver.hpp"

using namespace photonlab;

namespace {

mode_space::PhotonSpectrum packet(std::size_t n) {
    const auto k = mode_space::WaveVectorGrid::centered({n, n, n}, Vec3::Constant(0.5));
    return mode_space::gaussian_spectrum(k, Vec3(2, 0, 0), 1.0, {cplx(0.8), cplx(0, 0.6)});
}

void BM_Synthesize(benchmark::State& state) {
    const auto s = packet(static_cast<std::size_t>(state.range(0)));
    const auto grid = field::SpatialGrid::paired(s.grid());
    for (auto _ : state) benchmark::DoNotOptimize(field::synthesize(s, grid, 0.5));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_Synthesize)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_NumberDensity(benchmark::State& state) {
    const auto s = packet(static_cast<std::size_t>(state.range(0)));
    const auto f = field::synthesize(s, field::SpatialGrid::paired(s.grid()), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(density::number_density(f));
}
BENCHMARK(BM_NumberDensity)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FourMomentum(benchmark::State& state) {
    const auto s = packet(static_cast<std::size_t>(state.range(0)));
    const auto f = field::synthesize(s, field::SpatialGrid::paired(s.grid()), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(density::four_momentum_density(f));
}
BENCHMARK(BM_FourMomentum)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RetardedPotential(benchmark::State& state) {
    const auto cells = static_cast<std::size_t>(state.range(0));
    const double h = 2.0 / static_cast<double>(cells);
    const retarded::Lattice lat{{cells, cells, cells}, Vec3::Constant(h), Vec3::Constant(-1.0)};
    const auto src = retarded::SourceCurrent::from_function(lat, retarded::TimeAxis{200, 0.0, 0.05},
                                                            [](const Vec3& x, double t) {
                                                                const double g = std::exp(-4.0 * x.squaredNorm());
                                                                return std::pair<double, Vec3>(0.0, Vec3(0, 0, std::cos(t) * g));
                                                            });
    const retarded::Lattice stencil{{3, 3, 3}, Vec3::Constant(0.1), Vec3(0.5, 0.0, 4.0)};
    const std::vector<double> times{8.0, 8.1, 8.2, 8.3};
    const auto opts = retarded::default_options(src);
    for (auto _ : state) benchmark::DoNotOptimize(retarded::retarded_potential(src, stencil, times, opts));
}
BENCHMARK(BM_RetardedPotential)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
int main(int argc, char** argv) {
    spdlog::set_level(spdlog::level::err);
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
