#include "photonlab/runner/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace photonlab::runner {

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : Error(line > 0 ? "config line " + std::to_string(line) + ", key '" + key + "': " + message
                     : "config key '" + key + "': " + message),
      line_(line),
      key_(std::move(key)) {}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

struct Entry {
    std::size_t line;
    std::string key;
    std::string value;

    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(line, key, msg); }

    double number(const std::string& text) const {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) fail("not a number: '" + text + "'");
        return v;
    }
    double scalar() const { return number(value); }
    std::vector<double> numbers() const {
        std::vector<double> out;
        for (const auto& s : split_list(value)) out.push_back(number(s));
        return out;
    }
    Vec3 vec3() const {
        const auto v = numbers();
        if (v.size() != 3) fail("expected 3 comma-separated numbers");
        return {v[0], v[1], v[2]};
    }
    long integer(const std::string& text) const {
        long v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) fail("not an integer: '" + text + "'");
        return v;
    }
    bool boolean() const {
        if (value == "true" || value == "1" || value == "yes") return true;
        if (value == "false" || value == "0" || value == "no") return false;
        fail("expected true or false");
    }
};

using Handler = std::function<void(const Entry&, ScenarioConfig&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"grid.n",
         [](const Entry& e, ScenarioConfig& c) {
             const auto items = split_list(e.value);
             if (items.size() != 3) e.fail("expected 3 extents");
             for (int a = 0; a < 3; ++a) {
                 const long v = e.integer(items[a]);
                 if (v < 1) e.fail("extents must be positive");
                 c.grid.n[a] = static_cast<std::size_t>(v);
             }
         }},
        {"grid.delta_k", [](const Entry& e, ScenarioConfig& c) { c.grid.delta_k = e.vec3(); }},
        {"grid.k_min", [](const Entry& e, ScenarioConfig& c) { c.grid.k_min = e.vec3(); }},
        {"packet.kind",
         [](const Entry& e, ScenarioConfig& c) {
             if (e.value == "gaussian") c.packet.kind = PacketKind::gaussian;
             else if (e.value == "single_mode") c.packet.kind = PacketKind::single_mode;
             else if (e.value == "localized") c.packet.kind = PacketKind::localized;
             else if (e.value == "collinear") c.packet.kind = PacketKind::collinear;
             else e.fail("unknown packet kind '" + e.value + "'");
         }},
        {"packet.k0", [](const Entry& e, ScenarioConfig& c) { c.packet.k0 = e.vec3(); }},
        {"packet.sigma", [](const Entry& e, ScenarioConfig& c) { c.packet.sigma = e.scalar(); }},
        {"packet.x0", [](const Entry& e, ScenarioConfig& c) { c.packet.x0 = e.vec3(); }},
        {"packet.helicity_weights",
         [](const Entry& e, ScenarioConfig& c) {
             const auto v = e.numbers();
             if (v.size() == 2) c.packet.helicity_weights = {cplx(v[0]), cplx(v[1])};
             else if (v.size() == 4) c.packet.helicity_weights = {cplx(v[0], v[1]), cplx(v[2], v[3])};
             else e.fail("expected 'w_plus,w_minus' or 're+,im+,re-,im-'");
         }},
        {"time.t_list", [](const Entry& e, ScenarioConfig& c) { c.times = e.numbers(); }},
        {"time.t0", [](const Entry&, ScenarioConfig&) {}},
        {"time.t1", [](const Entry&, ScenarioConfig&) {}},
        {"time.steps", [](const Entry&, ScenarioConfig&) {}},
        {"output.densities",
         [](const Entry& e, ScenarioConfig& c) {
             c.output.densities.clear();
             for (const auto& name : split_list(e.value)) {
                 const auto kind = density::parse_kind(name);
                 if (!kind) e.fail("unknown density kind '" + name + "'");
                 c.output.densities.push_back(*kind);
             }
         }},
        {"output.slices",
         [](const Entry& e, ScenarioConfig& c) {
             c.output.slices.clear();
             for (const auto& item : split_list(e.value)) {
                 try {
                     c.output.slices.push_back(parse_plane(item));
                 } catch (const Error& err) {
                     e.fail(err.what());
                 }
             }
         }},
        {"output.summary", [](const Entry& e, ScenarioConfig& c) { c.output.summary = e.boolean(); }},
        {"output.raw_fields", [](const Entry& e, ScenarioConfig& c) { c.output.raw_fields = e.boolean(); }},
        {"output.directory", [](const Entry& e, ScenarioConfig& c) { c.output.directory = e.value; }},
        {"units.system",
         [](const Entry& e, ScenarioConfig& c) {
             if (e.value == "natural") c.units.si = false;
             else if (e.value == "si") c.units.si = true;
             else e.fail("expected natural or si");
         }},
        {"units.length_scale", [](const Entry& e, ScenarioConfig& c) { c.units.length_scale = e.scalar(); }},
        {"tolerance.number", [](const Entry& e, ScenarioConfig& c) { c.tolerances.number = e.scalar(); }},
        {"tolerance.current", [](const Entry& e, ScenarioConfig& c) { c.tolerances.current = e.scalar(); }},
        {"tolerance.energy", [](const Entry& e, ScenarioConfig& c) { c.tolerances.energy = e.scalar(); }},
        {"tolerance.momentum", [](const Entry& e, ScenarioConfig& c) { c.tolerances.momentum = e.scalar(); }},
        {"tolerance.synthesis", [](const Entry& e, ScenarioConfig& c) { c.tolerances.synthesis = e.scalar(); }},
        {"tolerance.guard_band", [](const Entry& e, ScenarioConfig& c) { c.tolerances.guard_band = e.scalar(); }},
        {"seed",
         [](const Entry& e, ScenarioConfig& c) {
             const long v = e.integer(e.value);
             if (v < 0) e.fail("seed must be non-negative");
             c.seed = static_cast<std::uint64_t>(v);
         }},
    };
    return table;
}

}  // namespace

SlicePlane parse_plane(std::string_view text) {
    const std::string s = trim(text);
    if (s.size() < 3 || s[1] != '=') throw Error("plane must look like 'z=<value>'");
    SlicePlane p;
    switch (s[0]) {
        case 'x': p.axis = 0; break;
        case 'y': p.axis = 1; break;
        case 'z': p.axis = 2; break;
        default: throw Error("plane axis must be x, y or z");
    }
    const std::string v = s.substr(2);
    char* end = nullptr;
    p.value = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size()) throw Error("plane value is not a number");
    return p;
}

std::string_view to_string(PacketKind kind) {
    switch (kind) {
        case PacketKind::gaussian: return "gaussian";
        case PacketKind::single_mode: return "single_mode";
        case PacketKind::localized: return "localized";
        case PacketKind::collinear: return "collinear";
    }
    return "unknown";
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    std::map<std::string, Entry> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, line, "expected 'key = value'");
        Entry e{line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (!handlers().contains(e.key)) throw ConfigError(line_no, e.key, "unknown key");
        if (seen.contains(e.key)) throw ConfigError(line_no, e.key, "duplicate key");
        seen.emplace(e.key, e);
    }

    for (const auto& [key, e] : seen) {
        if (key.starts_with("time.") && key != "time.t_list") continue;
        handlers().at(key)(e, cfg);
    }

    const bool has_span = seen.contains("time.t0") || seen.contains("time.t1") || seen.contains("time.steps");
    if (has_span) {
        if (seen.contains("time.t_list")) seen.at("time.t_list").fail("give either time.t_list or time.t0/t1/steps");
        for (const char* k : {"time.t0", "time.t1", "time.steps"})
            if (!seen.contains(k)) throw ConfigError(0, k, "missing (time.t0, time.t1 and time.steps go together)");
        const Entry& steps_entry = seen.at("time.steps");
        const long steps = steps_entry.integer(steps_entry.value);
        if (steps < 1) steps_entry.fail("must be at least 1");
        const double t0 = seen.at("time.t0").scalar();
        const double t1 = seen.at("time.t1").scalar();
        cfg.times.clear();
        for (long i = 0; i <= steps; ++i) cfg.times.push_back(t0 + (t1 - t0) * static_cast<double>(i) / steps);
    }

    if (cfg.packet.sigma <= 0.0) throw ConfigError(0, "packet.sigma", "must be positive");
    if (cfg.times.empty()) throw ConfigError(0, "time.t_list", "must not be empty");
    if (cfg.units.length_scale <= 0.0) throw ConfigError(0, "units.length_scale", "must be positive");
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << file.rdbuf();
    return parse_config(buf.str());
}

}  // namespace photonlab::runner
