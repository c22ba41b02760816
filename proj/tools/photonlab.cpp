#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "photonlab/parallel.hpp"
#include "photonlab/runner/acceptance.hpp"
#include "photonlab/runner/config.hpp"
#include "photonlab/runner/scenario.hpp"
#include "photonlab/version.hpp"

namespace {

namespace pr = photonlab::runner;

int cmd_run(const std::string& path) {
    const auto cfg = pr::load_config(path);
    const auto result = pr::run_scenario(cfg);
    for (const auto& a : result.artifacts) std::printf("wrote %s/%s\n", cfg.output.directory.c_str(), a.file.c_str());
    if (!result.summary_path.empty()) std::printf("summary %s\n", result.summary_path.string().c_str());
    for (const auto& name : result.failed_checks()) std::fprintf(stderr, "failed check: %s\n", name.c_str());
    return result.exit_code;
}

int cmd_selftest(bool inject_fault) {
    pr::AcceptanceOptions options;
    options.inject_measure_fault = inject_fault;
    int failures = 0;
    for (const auto& r : pr::run_acceptance(options)) {
        std::printf("%s\n", pr::format_result(r).c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(pr::acceptance_criteria().size()) - failures,
                pr::acceptance_criteria().size());
    return failures == 0 ? 0 : 1;
}

int cmd_export_slice(const std::string& path, const std::string& kind_name, const std::string& plane_text) {
    const auto cfg = pr::load_config(path);
    const auto kind = photonlab::density::parse_kind(kind_name);
    if (!kind) throw photonlab::Error("unknown density kind '" + kind_name + "'");
    for (const auto& p : pr::export_slice(cfg, *kind, pr::parse_plane(plane_text)))
        std::printf("wrote %s\n", p.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photonlab: single-photon densities, observables and retarded potentials"};
    app.require_subcommand(1);
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a scenario config and write its artifacts");
    run->add_option("config", config_path, "Scenario config file")->required();

    bool inject_fault = false;
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_flag("--inject-measure-fault", inject_fault, "Negative control: corrupt the mode measure");

    std::string kind;
    std::string plane;
    auto* slice = app.add_subcommand("export-slice", "Write CSV slices of one density");
    slice->add_option("config", config_path, "Scenario config file")->required();
    slice->add_option("--kind", kind, "Density kind (number, current, energy, ...)")->required();
    slice->add_option("--plane", plane, "Plane such as z=0.5")->required();

    auto* version = app.add_subcommand("version", "Print the version");

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(spdlog::level::from_str(log_level));
    spdlog::debug("threads: {} (PHOTONLAB_THREADS)", photonlab::thread_count());

    try {
        if (*run) return cmd_run(config_path);
        if (*selftest) return cmd_selftest(inject_fault);
        if (*slice) return cmd_export_slice(config_path, kind, plane);
        if (*version) {
            std::printf("photonlab %s\n", std::string(photonlab::kVersion).c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
