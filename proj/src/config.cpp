#include "hexns/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hexns/error.hpp"

namespace hexns {

namespace {

using json = nlohmann::json;

constexpr double kWindowFraction = 0.45;  // probe radius limit as a fraction of the box

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) { return fmt::format("{}[{}]", path, i); }

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(path.empty() ? "(document)" : path, "must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(join(path, it.key()), "is not a recognised key");
}

double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
}

long long get_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "must be an integer");
    return v.get<long long>();
}

std::string get_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "must be a string");
    return v.get<std::string>();
}

bool get_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path, "must be a boolean");
    return v.get<bool>();
}

const json& get_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "must be an array");
    return v;
}

void require_positive(double x, const std::string& path) {
    if (!(x > 0.0)) throw ConfigError(path, "must be positive");
}

void parse_grid(const json& g, SimConfig& c) {
    reject_unknown(g, "grid", {"n", "box"});
    if (g.contains("n")) {
        const long long n = get_integer(g["n"], "grid.n");
        if (n <= 0 || (n & (n - 1)) != 0) throw ConfigError("grid.n", "must be a power of 2");
        if (n < 64 || n > 4096) throw ConfigError("grid.n", "must lie in [64, 4096]");
        c.n = static_cast<int>(n);
    }
    if (g.contains("box")) {
        c.box = get_number(g["box"], "grid.box");
        require_positive(c.box, "grid.box");
    }
}

void parse_time(const json& t, SimConfig& c) {
    reject_unknown(t, "time", {"dt_policy", "dt", "cfl_fraction", "dt_max", "final_time", "snapshot_every"});
    if (t.contains("dt_policy")) {
        const std::string p = get_string(t["dt_policy"], "time.dt_policy");
        if (p == "fixed")
            c.dt_policy = RunOptions::DtPolicy::Fixed;
        else if (p == "cfl_fraction")
            c.dt_policy = RunOptions::DtPolicy::CflFraction;
        else
            throw ConfigError("time.dt_policy", "must be \"fixed\" or \"cfl_fraction\"");
    }
    auto positive = [&](const char* key, double& dst) {
        if (!t.contains(key)) return;
        const std::string path = join("time", key);
        dst = get_number(t[key], path);
        require_positive(dst, path);
    };
    positive("dt", c.dt);
    positive("cfl_fraction", c.cfl_fraction);
    positive("dt_max", c.dt_max);
    positive("final_time", c.final_time);
    positive("snapshot_every", c.snapshot_every);
    if (c.cfl_fraction > 1.0) throw ConfigError("time.cfl_fraction", "must not exceed 1");
}

void parse_init(const json& i, SimConfig& c) {
    reject_unknown(i, "init", {"class", "seed", "count", "support_radius", "bumps"});
    if (i.contains("class")) {
        const std::string s = get_string(i["class"], "init.class");
        try {
            c.init_class = symmetry_class_from_string(s);
        } catch (const DomainError&) {
            throw ConfigError("init.class",
                              "must be one of generic, radial, symmetric, half_symmetric_i, half_symmetric_ii");
        }
    }
    if (i.contains("seed")) {
        const json& v = i["seed"];
        if (!v.is_number_unsigned()) throw ConfigError("init.seed", "must be a non-negative integer");
        c.seed = v.get<std::uint64_t>();
    }
    if (i.contains("count")) {
        const long long k = get_integer(i["count"], "init.count");
        if (k < 1 || k > 64) throw ConfigError("init.count", "must lie in [1, 64]");
        c.bump_count = static_cast<int>(k);
    }
    if (i.contains("support_radius")) {
        c.support_radius = get_number(i["support_radius"], "init.support_radius");
        if (c.support_radius < 0.0) throw ConfigError("init.support_radius", "must be non-negative");
    }
    if (i.contains("bumps")) {
        const json& arr = get_array(i["bumps"], "init.bumps");
        c.bumps.clear();
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string p = index_path("init.bumps", k);
            reject_unknown(arr[k], p, {"cx", "cy", "r", "amp"});
            for (const char* key : {"cx", "cy", "r", "amp"})
                if (!arr[k].contains(key)) throw ConfigError(join(p, key), "is required");
            BumpSpec b;
            b.center = {get_number(arr[k]["cx"], join(p, "cx")), get_number(arr[k]["cy"], join(p, "cy"))};
            b.radius = get_number(arr[k]["r"], join(p, "r"));
            require_positive(b.radius, join(p, "r"));
            b.amplitude = get_number(arr[k]["amp"], join(p, "amp"));
            c.bumps.push_back(b);
        }
    }
}

void parse_probe(const json& p, SimConfig& c) {
    reject_unknown(p, "probe", {"radii", "m", "components", "times", "support_threshold"});
    if (p.contains("radii")) {
        const json& arr = get_array(p["radii"], "probe.radii");
        c.probe_radii.clear();
        for (std::size_t k = 0; k < arr.size(); ++k) c.probe_radii.push_back(get_number(arr[k], index_path("probe.radii", k)));
    }
    if (p.contains("m")) {
        const long long m = get_integer(p["m"], "probe.m");
        if (m < 16 || m > (1 << 20)) throw ConfigError("probe.m", "must lie in [16, 1048576]");
        c.probe_m = static_cast<int>(m);
    }
    if (p.contains("components")) {
        const json& arr = get_array(p["components"], "probe.components");
        c.probe_components.clear();
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string path = index_path("probe.components", k);
            const std::string s = get_string(arr[k], path);
            try {
                c.probe_components.push_back(component_from_string(s));
            } catch (const DomainError&) {
                throw ConfigError(path, "must be u1, u2 or speed");
            }
        }
    }
    if (p.contains("times")) {
        const json& arr = get_array(p["times"], "probe.times");
        c.probe_times.clear();
        for (std::size_t k = 0; k < arr.size(); ++k) c.probe_times.push_back(get_number(arr[k], index_path("probe.times", k)));
    }
    if (p.contains("support_threshold")) {
        c.probe_support_threshold = get_number(p["support_threshold"], "probe.support_threshold");
        if (!(c.probe_support_threshold > 0.0 && c.probe_support_threshold < 1.0))
            throw ConfigError("probe.support_threshold", "must lie in (0, 1)");
    }
}

void parse_output(const json& o, SimConfig& c) {
    reject_unknown(o, "output", {"dir", "checkpoints"});
    if (o.contains("dir")) {
        c.output_dir = get_string(o["dir"], "output.dir");
        if (c.output_dir.empty()) throw ConfigError("output.dir", "must not be empty");
    }
    if (o.contains("checkpoints")) c.checkpoints = get_bool(o["checkpoints"], "output.checkpoints");
}

// Rules that involve more than one key.
void cross_validate(const SimConfig& c) {
    const double rs = c.datum_support();
    if (rs >= c.box / 4) throw ConfigError("init.support_radius", "must be below box / 4");
    if (!c.bumps.empty()) {
        try {
            require_central_quarter(c.bumps, c.box);
        } catch (const DomainError& e) {
            throw ConfigError("init.bumps", std::string("violate the central-quarter rule: ") + e.what());
        }
    }
    for (std::size_t k = 0; k < c.probe_radii.size(); ++k) {
        const std::string path = index_path("probe.radii", k);
        const double r = c.probe_radii[k];
        if (!(r > 1.5)) throw ConfigError(path, "must exceed 1.5 support radii");
        if (r * rs > kWindowFraction * c.box)
            throw ConfigError(path, fmt::format("= {} exceeds the admissible window (radius {} > 0.45 box = {})", r,
                                                r * rs, kWindowFraction * c.box));
    }
    if (c.snapshot_every > c.final_time) throw ConfigError("time.snapshot_every", "must not exceed time.final_time");
    for (std::size_t k = 0; k < c.probe_times.size(); ++k) {
        const std::string path = index_path("probe.times", k);
        const double t = c.probe_times[k];
        if (!(t > 0.0 && t <= c.final_time * (1 + 1e-12)))
            throw ConfigError(path, "must lie in (0, time.final_time]");
        const double q = t / c.snapshot_every;
        const bool on_cadence = std::fabs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
        const bool at_end = std::fabs(t - c.final_time) <= 1e-12 * c.final_time;
        if (!on_cadence && !at_end) throw ConfigError(path, "must be a multiple of time.snapshot_every");
    }
    if (!c.probe_times.empty() && c.probe_radii.empty()) throw ConfigError("probe.radii", "are required with probe.times");
    if (!c.probe_radii.empty() && c.probe_components.empty())
        throw ConfigError("probe.components", "must not be empty");
}

}  // namespace

double SimConfig::datum_support() const {
    if (!bumps.empty()) {
        double r = 0.0;
        for (const auto& b : bumps) r = std::max(r, b.center.norm() + b.radius);
        return r;
    }
    return support_radius > 0.0 ? support_radius : box / 16.0;
}

RunOptions SimConfig::run_options() const {
    RunOptions o;
    o.dt_policy = dt_policy;
    o.dt = dt;
    o.cfl_fraction = cfl_fraction;
    o.dt_max = dt_max;
    o.final_time = final_time;
    o.snapshot_every = snapshot_every;
    return o;
}

SimConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("(document)", std::string("is not valid JSON: ") + e.what());
    }
    reject_unknown(doc, "", {"grid", "time", "init", "probe", "output"});
    SimConfig c;
    if (doc.contains("grid")) parse_grid(doc["grid"], c);
    if (doc.contains("time")) parse_time(doc["time"], c);
    if (doc.contains("init")) parse_init(doc["init"], c);
    if (doc.contains("probe")) parse_probe(doc["probe"], c);
    if (doc.contains("output")) parse_output(doc["output"], c);
    cross_validate(c);
    return c;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

nlohmann::ordered_json config_to_json(const SimConfig& c) {
    nlohmann::ordered_json j;
    j["grid"] = {{"n", c.n}, {"box", c.box}};
    j["time"] = {{"dt_policy", c.dt_policy == RunOptions::DtPolicy::Fixed ? "fixed" : "cfl_fraction"},
                 {"dt", c.dt},
                 {"cfl_fraction", c.cfl_fraction},
                 {"dt_max", c.dt_max},
                 {"final_time", c.final_time},
                 {"snapshot_every", c.snapshot_every}};
    nlohmann::ordered_json bumps = nlohmann::ordered_json::array();
    for (const auto& b : c.bumps)
        bumps.push_back({{"cx", b.center.x1}, {"cy", b.center.x2}, {"r", b.radius}, {"amp", b.amplitude}});
    j["init"] = {{"class", to_string(c.init_class)},
                 {"seed", c.seed},
                 {"count", c.bump_count},
                 {"support_radius", c.support_radius},
                 {"bumps", bumps}};
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (auto comp : c.probe_components) comps.push_back(to_string(comp));
    j["probe"] = {{"radii", c.probe_radii},
                  {"m", c.probe_m},
                  {"components", comps},
                  {"times", c.probe_times},
                  {"support_threshold", c.probe_support_threshold}};
    j["output"] = {{"dir", c.output_dir}, {"checkpoints", c.checkpoints}};
    return j;
}

}  // namespace hexns
