#include "hexns/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include <boost/version.hpp>
#include <fftw3.h>
#include <fmt/format.h>

#include "hexns/error.hpp"

namespace hexns {

namespace {

constexpr const char* kVersion = "1.0.0";

void dump_into(std::string& out, const ojson& j, int indent, int depth) {
    const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
    switch (j.type()) {
        case ojson::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? fmt::format("{:.17g}", v) : "null";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::none_of(j.begin(), j.end(), [](const ojson& e) { return e.is_structured(); });
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",";
                if (!flat) out += pad;
                dump_into(out, e, indent, depth + 1);
                first = false;
            }
            if (!flat) out += close;
            out += ']';
            return;
        }
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                out += pad;
                out += ojson(it.key()).dump();
                out += indent > 0 ? ": " : ":";
                dump_into(out, it.value(), indent, depth + 1);
                first = false;
            }
            out += close;
            out += '}';
            return;
        }
        default:
            out += j.dump();
    }
}

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson flux_json(const MomentumFlux& f) {
    return {{"a", f.a}, {"b", f.b}, {"d", f.d}, {"da", f.da}, {"db", f.db}, {"dd", f.dd}};
}

ojson provenance_json(const Provenance& p) {
    return {{"program", "hexns"},
            {"version", kVersion},
            {"command", p.command},
            {"seed", p.seed},
            {"libraries",
             {{"fftw", std::string(fftw_version)},
              {"boost", std::string(BOOST_LIB_VERSION)},
              {"fmt", fmt::format("{}.{}.{}", FMT_VERSION / 10000, FMT_VERSION / 100 % 100, FMT_VERSION % 100)},
              {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                            NLOHMANN_JSON_VERSION_PATCH)},
              {"compiler", std::string(__VERSION__)}}}};
}

std::string csv_field(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }
std::string csv_field(const std::optional<double>& v) { return v ? csv_field(*v) : "nan"; }

std::string csv(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += '\n';
    }
    return out;
}

std::string series_csv(const std::vector<SeriesRow>& series) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : series)
        rows.push_back({csv_field(s.t), csv_field(s.flux.a), csv_field(s.flux.b), csv_field(s.flux.d),
                        csv_field(s.flux.da), csv_field(s.flux.db), csv_field(s.flux.dd), csv_field(s.L),
                        csv_field(s.alpha), csv_field(s.hex_speed), csv_field(s.bound), csv_field(s.energy)});
    return csv({"t", "a", "b", "d", "da", "db", "dd", "L", "alpha", "hex_speed", "bound", "energy"}, rows);
}

std::string snapshots_csv(const std::vector<SnapshotRow>& snaps) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : snaps)
        rows.push_back({csv_field(s.t), std::to_string(s.step), csv_field(s.flux.a), csv_field(s.flux.b),
                        csv_field(s.flux.d), csv_field(s.flux.da), csv_field(s.flux.db), csv_field(s.flux.dd),
                        csv_field(s.L), csv_field(s.alpha), csv_field(s.hex_speed), csv_field(s.bound),
                        csv_field(s.energy), csv_field(s.dissipation), csv_field(s.energy_residual)});
    return csv({"t", "step", "a", "b", "d", "da", "db", "dd", "L", "alpha", "hex_speed", "bound", "energy",
                "dissipation", "energy_residual"},
               rows);
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

Verdict make_verdict(const std::string& name, double value, const std::string& relation, double threshold,
                     const std::string& evidence) {
    Verdict v{name, false, value, relation, threshold, evidence};
    if (relation == "<=")
        v.pass = value <= threshold;
    else if (relation == "<")
        v.pass = value < threshold;
    else if (relation == ">=")
        v.pass = value >= threshold;
    else if (relation == ">")
        v.pass = value > threshold;
    else if (relation == "==")
        v.pass = value == threshold;
    else
        throw DomainError("unknown verdict relation '" + relation + "'");
    return v;
}

SnapshotRow snapshot_row(const Snapshot& s, double initial_energy) {
    SnapshotRow r;
    r.t = s.time;
    r.step = s.step;
    r.flux = s.flux;
    const SeriesRow sr = series_row(s.time, s.flux, s.energy);
    r.L = sr.L;
    r.alpha = sr.alpha;
    r.hex_speed = sr.hex_speed;
    r.bound = sr.bound;
    r.energy = s.energy;
    r.dissipation = s.dissipation;
    r.energy_residual =
        initial_energy == 0.0 ? 0.0 : std::fabs(s.energy + s.dissipation - initial_energy) / initial_energy;
    return r;
}

bool RunReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string dump_json(const ojson& j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    return out;
}

ojson to_json(const FarFieldProfile& p, bool with_samples) {
    ojson j = {{"R", p.R}, {"t", p.t}, {"component", to_string(p.component)}, {"m", p.values.size()},
               {"noise_floor", p.noise_floor}};
    if (with_samples) {
        j["theta"] = p.theta;
        j["values"] = p.values;
    }
    return j;
}

ojson to_json(const SinusoidFit& f) {
    return {{"amplitude", f.amplitude},
            {"phase", f.phase},
            {"residual_rms", f.residual_rms},
            {"minima", f.minima},
            {"harmonics", f.harmonics},
            {"conclusive", f.conclusive},
            {"hexagon_detected", f.hexagon_detected}};
}

ojson to_json(const ComparisonRecord& c) {
    return {{"component", to_string(c.component)},
            {"amplitude", c.amplitude},
            {"L", c.L},
            {"amplitude_error", c.amplitude_error},
            {"expected_phase", c.expected_phase},
            {"phase_error", c.phase_error},
            {"signed_phase_error", c.signed_phase_error},
            {"vertex_mismatch", c.vertex_mismatch},
            {"max_vertex_mismatch", c.max_vertex_mismatch}};
}

ojson to_json(const IsotropyRecord& r) {
    return {{"cv", r.cv},           {"mean", r.mean},
            {"min_value", r.min_value}, {"L", r.L},
            {"mean_error", r.mean_error}, {"nowhere_at_rest", r.nowhere_at_rest}};
}

ojson to_json(const Verdict& v) {
    return {{"name", v.name},         {"pass", v.pass},         {"value", v.value},
            {"relation", v.relation}, {"threshold", v.threshold}, {"evidence", v.evidence}};
}

ojson to_json(const ProbeRecord& p) {
    ojson comps = ojson::array();
    for (const auto& c : p.components) {
        ojson cj = {{"profile", to_json(c.profile, false)}, {"fit", c.fit ? to_json(*c.fit) : ojson(nullptr)}};
        cj["comparison"] = c.comparison ? to_json(*c.comparison) : ojson(nullptr);
        comps.push_back(cj);
    }
    ojson pj = {{"t", p.t},
                {"radius_multiplier", p.radius_multiplier},
                {"R", p.R},
                {"support_radius", p.support_radius},
                {"dropped_mass", p.dropped_mass},
                {"L", p.L},
                {"alpha", opt(p.alpha)},
                {"components", comps}};
    pj["isotropy"] = p.isotropy ? to_json(*p.isotropy) : ojson(nullptr);
    return pj;
}

ojson report_to_json(const RunReport& r) {
    ojson j;
    j["kind"] = r.kind;
    j["config"] = r.config;
    ojson snaps = ojson::array();
    for (const auto& s : r.snapshots)
        snaps.push_back({{"t", s.t},
                         {"step", s.step},
                         {"flux", flux_json(s.flux)},
                         {"L", s.L},
                         {"alpha", opt(s.alpha)},
                         {"hex_speed", opt(s.hex_speed)},
                         {"bound", opt(s.bound)},
                         {"energy", s.energy},
                         {"dissipation", s.dissipation},
                         {"energy_residual", s.energy_residual}});
    j["snapshots"] = snaps;
    ojson probes = ojson::array();
    for (const auto& p : r.probes) probes.push_back(to_json(p));
    j["probes"] = probes;
    ojson tables = ojson::array();
    for (const auto& t : r.tables) tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows.size()}});
    j["tables"] = tables;
    ojson rasters = ojson::array();
    for (const auto& ra : r.rasters)
        rasters.push_back({{"name", ra.name},
                           {"width", ra.raster.width},
                           {"height", ra.raster.height},
                           {"min", ra.raster.min},
                           {"max", ra.raster.max}});
    j["rasters"] = rasters;
    j["results"] = r.results;
    ojson verdicts = ojson::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    j["verdicts"] = verdicts;
    j["pass"] = r.all_pass();
    j["provenance"] = provenance_json(r.provenance);
    return j;
}

Table to_table(const std::string& name, const DuhamelTable& t) {
    Table out{name, {"R", "residual", "error_estimate", "scale"}, {}};
    for (const auto& r : t.rows) out.rows.push_back({r.R, r.residual, r.error_estimate, t.scale});
    return out;
}

Table to_table(const std::string& name, const HeatTable& t) {
    Table out{name, {"R", "value"}, {}};
    for (const auto& r : t.rows) out.rows.push_back({r.R, r.value});
    return out;
}

Table to_table(const std::string& name, const HeatTScaling& s) {
    Table out{name, {"T", "bound", "slope"}, {}};
    for (std::size_t i = 0; i < s.T.size(); ++i)
        out.rows.push_back({s.T[i], s.bound[i], i == 0 ? std::numeric_limits<double>::quiet_NaN() : s.slopes[i - 1]});
    return out;
}

Table to_table(const std::string& name, const L2DecayResult& r) {
    Table out{name, {"t", "energy", "heat_energy", "difference", "heat_bound"}, {}};
    for (const auto& row : r.rows) out.rows.push_back({row.t, row.energy, row.heat_energy, row.difference, row.heat_bound});
    return out;
}

ojson table_json(const Table& t) { return {{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}}; }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IoError("write failed for " + path);
}

void emit_report(const RunReport& r, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    auto path = [&](const std::string& name) { return (fs::path(dir) / name).string(); };

    write_text_file(path("report.json"), dump_json(report_to_json(r)) + "\n");
    if (!r.series.empty()) write_text_file(path("series.csv"), series_csv(r.series));
    if (!r.snapshots.empty()) write_text_file(path("snapshots.csv"), snapshots_csv(r.snapshots));

    // Probe profiles grouped by time and component, one column per radius.
    std::vector<double> times;
    for (const auto& p : r.probes)
        if (std::find(times.begin(), times.end(), p.t) == times.end()) times.push_back(p.t);
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::map<std::string, std::vector<const FarFieldProfile*>> by_comp;
        std::vector<std::string> order;
        for (const auto& p : r.probes) {
            if (p.t != times[k]) continue;
            for (const auto& c : p.components) {
                const std::string name = to_string(c.profile.component);
                if (!by_comp.count(name)) order.push_back(name);
                by_comp[name].push_back(&c.profile);
            }
        }
        for (const auto& name : order) {
            const auto& profs = by_comp[name];
            std::vector<std::string> cols{"theta"};
            for (const auto* p : profs) cols.push_back("R=" + format_double(p->R));
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < profs.front()->theta.size(); ++i) {
                std::vector<std::string> row{csv_field(profs.front()->theta[i])};
                for (const auto* p : profs) row.push_back(i < p->values.size() ? csv_field(p->values[i]) : "nan");
                rows.push_back(row);
            }
            write_text_file(path(fmt::format("profile_t{}_{}.csv", k, name)), csv(cols, rows));
        }
    }

    for (const auto& t : r.tables) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : t.rows) {
            std::vector<std::string> s;
            for (double v : row) s.push_back(csv_field(v));
            rows.push_back(s);
        }
        write_text_file(path(t.name + ".csv"), csv(t.columns, rows));
    }
    for (const auto& ra : r.rasters) write_pgm(ra.raster, path(ra.name + ".pgm"));

    write_text_file(path("timing.json"), dump_json(ojson{{"wall_seconds", r.wall_seconds}}) + "\n");
}

}  // namespace hexns
