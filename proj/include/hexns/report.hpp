#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexns/asymptotics.hpp"
#include "hexns/farfield.hpp"
#include "hexns/solver.hpp"
#include "hexns/verify.hpp"

namespace hexns {

using ojson = nlohmann::ordered_json;

// One pass/fail judgement.  `evidence` is a JSON pointer into the report
// naming the row that holds `value`.
struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string relation;  // "<=", "<", ">=", ">", "=="
    double threshold = 0.0;
    std::string evidence;
};

Verdict make_verdict(const std::string& name, double value, const std::string& relation, double threshold,
                     const std::string& evidence);

struct SnapshotRow {
    double t = 0.0;
    long step = 0;
    MomentumFlux flux;
    double L = 0.0;
    std::optional<double> alpha;
    std::optional<double> hex_speed;
    std::optional<double> bound;
    double energy = 0.0;
    double dissipation = 0.0;
    double energy_residual = 0.0;
};

SnapshotRow snapshot_row(const Snapshot& s, double initial_energy);

struct ComponentProbe {
    FarFieldProfile profile;
    std::optional<SinusoidFit> fit;  // u1 and u2 only
    std::optional<ComparisonRecord> comparison;  // u1 and u2 only
};

struct ProbeRecord {
    double t = 0.0;
    double radius_multiplier = 0.0;
    double R = 0.0;
    double support_radius = 0.0;
    double dropped_mass = 0.0;
    double L = 0.0;
    std::optional<double> alpha;
    std::vector<ComponentProbe> components;
    std::optional<IsotropyRecord> isotropy;  // when speed is probed
};

struct Table {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct NamedRaster {
    std::string name;  // file stem
    Raster raster;
};

struct Provenance {
    std::string command;
    std::uint64_t seed = 0;
};

struct RunReport {
    std::string kind;  // simulate, probe, analyze, verify, accept, render
    ojson config = ojson::object();
    std::vector<SnapshotRow> snapshots;
    std::vector<SeriesRow> series;
    std::vector<ProbeRecord> probes;
    std::vector<Table> tables;
    std::vector<NamedRaster> rasters;
    ojson results = ojson::object();  // free-form measured quantities
    std::vector<Verdict> verdicts;
    Provenance provenance;
    double wall_seconds = 0.0;  // written to a sidecar, not the report

    bool all_pass() const;
};

// JSON with fixed key order and every double printed with 17 significant
// digits; non-finite values become null.
std::string dump_json(const ojson& j, int indent = 2);

ojson to_json(const FarFieldProfile& p, bool with_samples);
ojson to_json(const SinusoidFit& f);
ojson to_json(const ComparisonRecord& c);
ojson to_json(const IsotropyRecord& r);
ojson to_json(const Verdict& v);
ojson to_json(const ProbeRecord& p);
ojson report_to_json(const RunReport& r);

// Harness tables as CSV-ready rows; table_json keeps every row.
Table to_table(const std::string& name, const DuhamelTable& t);
Table to_table(const std::string& name, const HeatTable& t);
Table to_table(const std::string& name, const HeatTScaling& s);
Table to_table(const std::string& name, const L2DecayResult& r);
ojson table_json(const Table& t);

// Writes report.json, series.csv, snapshots.csv, one CSV per probed time and
// component (theta, value per radius), one CSV per table, one PGM per
// raster, and timing.json.  All files except timing.json are byte-identical
// for identical inputs.
void emit_report(const RunReport& r, const std::string& dir);

void write_text_file(const std::string& path, const std::string& text);
std::string format_double(double v);

}  // namespace hexns
