#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hexns/acceptance.hpp"
#include "hexns/asymptotics.hpp"
#include "hexns/checkpoint.hpp"
#include "hexns/config.hpp"
#include "hexns/error.hpp"
#include "hexns/farfield.hpp"
#include "hexns/initdata.hpp"
#include "hexns/kernels.hpp"
#include "hexns/pipeline.hpp"
#include "hexns/report.hpp"
#include "hexns/solver.hpp"
#include "hexns/verify.hpp"

using namespace hexns;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += i == 0 ? fs::path(argv[0]).filename().string() : argv[i];
    }
    return s;
}

int finish(RunReport& r, const std::string& out, Clock::time_point t0) {
    r.wall_seconds = seconds_since(t0);
    emit_report(r, out);
    for (const auto& v : r.verdicts)
        if (!v.pass)
            fmt::print("FAIL {}: {:.6g} (need {} {:.6g}) [{}]\n", v.name, v.value, v.relation, v.threshold, v.evidence);
    const bool ok = r.all_pass();
    fmt::print("{}: {} verdicts, {} -> {}\n", r.kind, r.verdicts.size(), ok ? "pass" : "fail", out);
    return ok ? kExitPass : kExitFail;
}

Component parse_component(const std::string& s) {
    try {
        return component_from_string(s);
    } catch (const DomainError&) {
        throw UsageError("component must be u1, u2 or speed");
    }
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, const std::string& command) {
    const auto t0 = Clock::now();
    SimConfig c = parse_config_file(a.config);
    if (!a.out.empty()) c.output_dir = a.out;
    SimulationOutput sim = simulate(c, (fs::path(c.output_dir) / "checkpoints").string());
    sim.report.provenance.command = command;
    return finish(sim.report, c.output_dir, t0);
}

struct ProbeArgs {
    std::string checkpoint;
    std::vector<double> radii{3, 4, 6};
    int m = 512;
    std::vector<std::string> components{"u1", "u2", "speed"};
    double support_radius = 0.0;
    double threshold = 1e-8;
    std::string out = "probe_out";
};

int cmd_probe(const ProbeArgs& a, const std::string& command) {
    const auto t0 = Clock::now();
    const FlowState s = read_checkpoint(a.checkpoint);
    const double rs = a.support_radius > 0.0 ? a.support_radius : s.omega.box / 16.0;
    for (double r : a.radii)
        if (r * rs > 0.45 * s.omega.box) throw UsageError(fmt::format("radius {} exceeds the admissible window", r));
    std::vector<Component> comps;
    for (const auto& c : a.components) comps.push_back(parse_component(c));
    RunReport r;
    r.kind = "probe";
    r.provenance.command = command;
    r.config = {{"checkpoint", a.checkpoint}, {"radii", a.radii},          {"m", a.m},
                {"components", a.components}, {"support_radius", rs},     {"support_threshold", a.threshold},
                {"t", s.time},                {"n", s.omega.n},           {"box", s.omega.box}};
    r.probes = probe_snapshot(s.omega, s.flux, s.time, a.radii, rs, a.m, comps, a.threshold);
    ojson summary;
    r.verdicts = probe_verdicts(r.probes, 0, ProbeCriteria{}, summary, "/results/probe_summary/0");
    r.results["probe_summary"] = ojson::array({summary});
    return finish(r, a.out, t0);
}

struct AnalyzeArgs {
    std::string checkpoints;
    std::string out = "analyze_out";
};

int cmd_analyze(const AnalyzeArgs& a, const std::string& command) {
    const auto t0 = Clock::now();
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(a.checkpoints))
        if (e.path().extension() == ".bin") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no checkpoint files (*.bin) in " + a.checkpoints);

    Trajectory tr;
    for (const auto& f : files) {
        const FlowState s = read_checkpoint(f);
        Snapshot snap;
        snap.time = s.time;
        snap.step = s.steps;
        snap.omega = std::make_shared<const GridScalarField>(s.omega);
        snap.flux = s.flux;
        snap.energy = s.flux.da + s.flux.dd;
        snap.dissipation = s.dissipation_accum;
        tr.snapshots.push_back(snap);
        tr.series.push_back(series_row(s.time, s.flux, snap.energy));
    }
    std::sort(tr.snapshots.begin(), tr.snapshots.end(), [](const Snapshot& x, const Snapshot& y) { return x.time < y.time; });
    const Snapshot& first = tr.snapshots.front();
    tr.initial_energy = first.energy + first.dissipation;

    RunReport r;
    r.kind = "analyze";
    r.provenance.command = command;
    r.config = {{"checkpoints", a.checkpoints}, {"files", files.size()}};
    std::vector<FluxSample> samples;
    double worst_bound = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
        const auto& s = tr.snapshots[i];
        r.snapshots.push_back(snapshot_row(s, tr.initial_energy));
        samples.push_back({s.time, s.flux, s.energy});
        const auto& row = r.snapshots.back();
        if (row.hex_speed && row.bound && *row.hex_speed / *row.bound > worst_bound) {
            worst_bound = *row.hex_speed / *row.bound;
            worst_i = i;
        }
    }
    r.verdicts.push_back(make_verdict("hex_speed / bound", worst_bound, "<=", 1.0 + 1e-9,
                                      fmt::format("/snapshots/{}/hex_speed", worst_i)));
    std::size_t worst_e = 0;
    for (std::size_t i = 0; i < r.snapshots.size(); ++i)
        if (r.snapshots[i].energy_residual > r.snapshots[worst_e].energy_residual) worst_e = i;
    r.verdicts.push_back(make_verdict("energy equality", r.snapshots[worst_e].energy_residual, "<=", 1e-6,
                                      fmt::format("/snapshots/{}/energy_residual", worst_e)));

    const LargeTimeResult lt = large_time_extrapolate(samples);
    r.results["large_time"] = {{"conclusive", lt.conclusive},
                               {"L", lt.invariant.L},
                               {"alpha", lt.invariant.defined() ? ojson(lt.invariant.hexagon->alpha) : ojson(nullptr)},
                               {"decay_exponent", lt.decay_exponent},
                               {"decay_constant", lt.decay_constant},
                               {"tail_bound", lt.tail_bound}};
    if (first.time == 0.0 && tr.snapshots.size() >= 3) {
        const L2DecayResult l2 = l2_decay_track(tr, velocity_from_vorticity(*first.omega));
        r.tables.push_back(to_table("l2_decay", l2));
        r.results["l2_decay"] = {{"C", l2.C},
                                 {"energy_non_increasing", l2.energy_non_increasing},
                                 {"heat_bound_holds", l2.heat_bound_holds},
                                 {"energy_exponent", l2.energy_exponent},
                                 {"difference_exponent", l2.difference_exponent}};
        r.verdicts.push_back(make_verdict("heat energy bound", l2.heat_bound_holds ? 1.0 : 0.0, "==", 1.0,
                                          "/results/l2_decay/heat_bound_holds"));
    }
    return finish(r, a.out, t0);
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    std::string out = "verify_out";
    std::vector<double> radii{4, 8, 16};
    double t = 1.0;
    int directions = 16;
};

void verify_kernels(RunReport& r) {
    Table moments{"kernel_moments", {"R", "t", "max_abs", "level_difference"}, {}};
    double worst = 0.0;
    for (double R : {0.5, 1.0, 5.0})
        for (double t : {0.1, 1.0}) {
            const MomentResult m = kernel_moment(R, t);
            moments.rows.push_back({R, t, m.value.max_abs(), m.level_difference});
            worst = std::max(worst, m.value.max_abs());
        }
    const EnvelopeFit env = fit_remainder_envelope(1.0, 8.0, 29);
    Table envelope{"remainder_envelope", {"xi", "magnitude", "envelope"}, {}};
    for (std::size_t i = 0; i < env.xi.size(); ++i)
        envelope.rows.push_back({env.xi[i], env.magnitude[i], env.C * std::exp(-env.c * env.xi[i] * env.xi[i])});
    const double ratio = env.magnitude.front() / env.magnitude.back();
    r.results["kernels"] = {{"max_moment", worst}, {"envelope_C", env.C}, {"envelope_c", env.c}, {"psi_ratio", ratio}};
    r.verdicts.push_back(make_verdict("ball moments of F", worst, "<=", 1e-8, "/results/kernels/max_moment"));
    r.verdicts.push_back(make_verdict("Psi decay between xi = 1 and 8", ratio, ">=", 1e6, "/results/kernels/psi_ratio"));
    r.tables.push_back(moments);
    r.tables.push_back(envelope);
}

void verify_duhamel(RunReport& r, const VerifyArgs& a) {
    r.results["duhamel"] = ojson::array();
    auto add = [&](const std::string& name, const SyntheticTensorField& w) {
        const DuhamelTable t = duhamel_asymptotics_check(w, a.t, a.radii, a.directions);
        const std::size_t i = r.results["duhamel"].size();
        r.results["duhamel"].push_back({{"name", name},
                                        {"profile", to_string(w.profile)},
                                        {"width", w.width},
                                        {"exponent", w.exponent},
                                        {"scale", t.scale},
                                        {"strictly_decreasing", t.strictly_decreasing},
                                        {"final_ratio", t.final_ratio}});
        r.tables.push_back(to_table(name, t));
        r.verdicts.push_back(make_verdict(name + " decreasing", t.strictly_decreasing ? 1.0 : 0.0, "==", 1.0,
                                          fmt::format("/results/duhamel/{}/strictly_decreasing", i)));
        r.verdicts.push_back(make_verdict(name + " final ratio", t.final_ratio, "<=", 0.05,
                                          fmt::format("/results/duhamel/{}/final_ratio", i)));
    };
    for (double e : {0.0, 0.7}) {
        SyntheticTensorField w;
        w.matrix = {1.0, 0.3, -0.5};
        w.exponent = e;
        add(fmt::format("duhamel_bump_a{}", e), w);
    }
    SyntheticTensorField g;
    g.profile = SpatialProfile::Gaussian;
    g.width = 0.25;
    g.matrix = {0.4, 0.3, -0.5};
    add("duhamel_gaussian", g);
}

void verify_heat(RunReport& r, const VerifyArgs& a) {
    r.results["heat"] = ojson::array();
    struct Case {
        HeatField f;
        HeatCase c;
    };
    for (const Case& hc : {Case{HeatField::Gaussian, HeatCase::I}, Case{HeatField::GradientDecay, HeatCase::II},
                           Case{HeatField::LaplacianDecay, HeatCase::III}, Case{HeatField::CubicTail, HeatCase::I}}) {
        const HeatTable t = heat_tail_check({hc.f}, hc.c, a.t, a.radii, a.directions);
        const std::size_t i = r.results["heat"].size();
        r.results["heat"].push_back({{"case", to_string(hc.c)},
                                     {"field", to_string(hc.f)},
                                     {"finite", t.finite},
                                     {"strictly_decreasing", t.strictly_decreasing},
                                     {"non_vanishing", t.non_vanishing},
                                     {"pass", t.pass}});
        r.tables.push_back(to_table("heat_" + to_string(hc.f), t));
        r.verdicts.push_back(make_verdict(fmt::format("heat {} {}", to_string(hc.c), to_string(hc.f)),
                                          t.pass ? 1.0 : 0.0, "==", 1.0, fmt::format("/results/heat/{}/pass", i)));
    }
    const HeatTScaling s = heat_T_scaling({HeatField::GradientDecay}, HeatCase::II, 0.25, 4, a.radii);
    r.results["T_scaling"] = {{"max_slope", s.max_slope}};
    r.tables.push_back(to_table("heat_T_scaling", s));
    r.verdicts.push_back(make_verdict("case ii growth exponent in T", s.max_slope, "<=", 3.0, "/results/T_scaling/max_slope"));
}

void verify_decay(RunReport& r) {
    const Datum d = make_datum_full(128, 16.0, random_bumps(16.0, 42, 3, 2.0), SymmetryClass::Generic, 42);
    RunOptions o;
    o.final_time = 8.0;
    o.snapshot_every = 0.25;
    o.dt_max = 0.02;
    const Trajectory tr = run(initial_state(d.omega), o);
    const L2DecayResult l2 = l2_decay_track(tr, velocity_from_vorticity(*tr.snapshots.front().omega));
    r.tables.push_back(to_table("l2_decay", l2));

    Table w{"weighted_norms", {"t", "sup_phi_u", "sup_psi_grad", "t^(1/8) sup_phi_u"}, {}};
    const double w0 = weighted_norm_monitor(d.u, 0.0).sup_phi_u;
    double worst = 0.0;
    for (const auto& s : tr.snapshots) {
        const WeightedNorms n = weighted_norm_monitor(velocity_from_vorticity(*s.omega), s.time);
        const double scaled = std::pow(s.time, 0.125) * n.sup_phi_u;
        w.rows.push_back({s.time, n.sup_phi_u, n.sup_psi_grad, scaled});
        if (s.time > 0.0 && s.time <= 1.0) worst = std::max(worst, scaled / w0);
    }
    r.tables.push_back(w);
    r.results["decay"] = {{"C", l2.C},
                          {"energy_non_increasing", l2.energy_non_increasing},
                          {"heat_bound_holds", l2.heat_bound_holds},
                          {"energy_exponent", l2.energy_exponent},
                          {"difference_exponent", l2.difference_exponent},
                          {"max_scaled_phi_over_initial", worst}};
    r.verdicts.push_back(make_verdict("energy non-increasing", l2.energy_non_increasing ? 1.0 : 0.0, "==", 1.0,
                                      "/results/decay/energy_non_increasing"));
    r.verdicts.push_back(make_verdict("heat energy bound", l2.heat_bound_holds ? 1.0 : 0.0, "==", 1.0,
                                      "/results/decay/heat_bound_holds"));
    r.verdicts.push_back(make_verdict("difference exponent", l2.difference_exponent, "<=", -1.5,
                                      "/results/decay/difference_exponent"));
    r.verdicts.push_back(make_verdict("t^(1/8) sup phi|u| on (0,1] / sup phi|u0|", worst, "<=", 1.0,
                                      "/results/decay/max_scaled_phi_over_initial"));
}

int cmd_verify(const VerifyArgs& a, const std::string& command) {
    const auto t0 = Clock::now();
    RunReport r;
    r.kind = "verify";
    r.provenance.command = command;
    r.config = {{"suite", a.suite}, {"radii", a.radii}, {"t", a.t}, {"directions", a.directions}};
    if (a.suite == "kernels")
        verify_kernels(r);
    else if (a.suite == "duhamel")
        verify_duhamel(r, a);
    else if (a.suite == "heat")
        verify_heat(r, a);
    else if (a.suite == "decay")
        verify_decay(r);
    else
        throw UsageError("suite must be kernels, duhamel, heat or decay");
    return finish(r, a.out, t0);
}

// ---------------------------------------------------------------------------

struct RenderArgs {
    std::string checkpoint;
    std::vector<double> flux;
    std::string component = "u1";
    int pixels = 256;
    double half_width = 4.0;
    bool no_r3 = false;
    std::string out = "render.pgm";
};

int cmd_render(const RenderArgs& a) {
    if (a.checkpoint.empty() == a.flux.empty()) throw UsageError("give exactly one of --checkpoint and --flux");
    RasterSpec spec;
    spec.pixels = a.pixels;
    spec.half_width = a.half_width;
    spec.component = parse_component(a.component);
    spec.scale_r3 = !a.no_r3;
    Raster r;
    if (!a.checkpoint.empty()) {
        r = render_simulated(read_checkpoint(a.checkpoint).omega, spec);
    } else {
        if (a.flux.size() != 3) throw UsageError("--flux takes a,b,d");
        MomentumFlux f;
        f.a = a.flux[0];
        f.b = a.flux[1];
        f.d = a.flux[2];
        r = render_closed_form(f, spec);
    }
    const fs::path parent = fs::path(a.out).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    write_pgm(r, a.out);
    fmt::print("render: {}x{} [{:.6g}, {:.6g}] -> {}\n", r.width, r.height, r.min, r.max, a.out);
    return kExitPass;
}

struct AcceptArgs {
    std::vector<std::string> suites{"all"};
    std::string out;
    bool full = false;
};

int cmd_accept(const AcceptArgs& a, const std::string& command) {
    const auto t0 = Clock::now();
    std::vector<int> ids;
    for (const auto& s : a.suites) {
        if (s == "all") {
            for (const auto& c : acceptance_criteria()) ids.push_back(c.id);
            continue;
        }
        try {
            ids.push_back(criterion_id(s));
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    std::vector<CriterionOutcome> outcomes;
    for (int id : ids) {
        outcomes.push_back(run_criterion(id, AcceptOptions{a.full}));
        fmt::print("{}\n", criterion_line(outcomes.back()));
        std::fflush(stdout);
    }
    RunReport r = acceptance_report(outcomes);
    r.provenance.command = command;
    if (!a.out.empty()) {
        r.wall_seconds = seconds_since(t0);
        emit_report(r, a.out);
    }
    return r.all_pass() ? kExitPass : kExitFail;
}

int cmd_report(const std::string& dir) {
    const fs::path p = fs::path(dir) / "report.json";
    std::ifstream in(p);
    if (!in) throw UsageError("cannot open " + p.string());
    const ojson j = ojson::parse(in);
    fmt::print("kind: {}\n", j.at("kind").get<std::string>());
    for (const auto& v : j.at("verdicts"))
        fmt::print("{} {}: {} {} {:.6g} [{}]\n", v.at("pass").get<bool>() ? "PASS" : "FAIL", v.at("name").get<std::string>(),
                   v.at("value").is_null() ? std::string("null") : fmt::format("{:.6g}", v.at("value").get<double>()),
                   v.at("relation").get<std::string>(), v.at("threshold").get<double>(), v.at("evidence").get<std::string>());
    const bool ok = j.at("pass").get<bool>();
    fmt::print("overall: {}\n", ok ? "pass" : "fail");
    return ok ? kExitPass : kExitFail;
}

struct KernelTableArgs {
    double t = 1.0;
    std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
    int directions = 8;
};

int cmd_kernel_table(const KernelTableArgs& a) {
    fmt::print("x1,x2,t,j,h,k,F,frakF,Psi\n");
    for (double R : a.radii)
        for (int i = 0; i < a.directions; ++i) {
            const double th = 2 * std::numbers::pi * i / a.directions;
            const KernelSample s = sample_kernels({R * std::cos(th), R * std::sin(th)}, a.t);
            for (int j = 0; j < 2; ++j)
                for (int h = 0; h < 2; ++h)
                    for (int k = 0; k < 2; ++k)
                        fmt::print("{},{},{},{},{},{},{},{},{}\n", format_double(s.x.x1), format_double(s.x.x2),
                                   format_double(s.t), j + 1, h + 1, k + 1, format_double(s.f(j, h, k)),
                                   format_double(s.frak_f(j, h, k)), format_double(s.psi(j, h, k)));
        }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Far-field laboratory for 2D Navier-Stokes flows"};
    app.require_subcommand(1);
    const std::string command = command_line(argc, argv);

    SimulateArgs sim;
    auto* s_sim = app.add_subcommand("simulate", "run a configured simulation and write its report");
    s_sim->add_option("--config", sim.config, "JSON config file")->required()->check(CLI::ExistingFile);
    s_sim->add_option("--out", sim.out, "output directory (overrides output.dir)");

    ProbeArgs probe;
    auto* s_probe = app.add_subcommand("probe", "far-field profiles of a checkpoint");
    s_probe->add_option("--checkpoint", probe.checkpoint)->required()->check(CLI::ExistingFile);
    s_probe->add_option("--radii", probe.radii, "radii in units of the support radius")->delimiter(',');
    s_probe->add_option("--mtheta", probe.m, "angular samples")->check(CLI::Range(16, 1 << 20));
    s_probe->add_option("--component", probe.components, "u1, u2, speed")->delimiter(',');
    s_probe->add_option("--support-radius", probe.support_radius, "datum support radius (default box/16)");
    s_probe->add_option("--support-threshold", probe.threshold, "relative effective-support threshold");
    s_probe->add_option("--out", probe.out);

    AnalyzeArgs an;
    auto* s_an = app.add_subcommand("analyze", "invariant series and decay of a checkpoint directory");
    s_an->add_option("--checkpoints", an.checkpoints)->required()->check(CLI::ExistingDirectory);
    s_an->add_option("--out", an.out);

    VerifyArgs ver;
    auto* s_ver = app.add_subcommand("verify", "lemma harnesses");
    s_ver->add_option("--suite", ver.suite, "kernels, duhamel, heat or decay")->required();
    s_ver->add_option("--out", ver.out);
    s_ver->add_option("--radii", ver.radii)->delimiter(',');
    s_ver->add_option("--t", ver.t, "time (duhamel) or horizon T (heat)");
    s_ver->add_option("--directions", ver.directions)->check(CLI::Range(1, 4096));

    RenderArgs ren;
    auto* s_ren = app.add_subcommand("render", "PGM raster of a velocity component");
    s_ren->add_option("--checkpoint", ren.checkpoint)->check(CLI::ExistingFile);
    s_ren->add_option("--flux", ren.flux, "closed form for a,b,d")->delimiter(',');
    s_ren->add_option("--component", ren.component);
    s_ren->add_option("--pixels", ren.pixels)->check(CLI::Range(8, 8192));
    s_ren->add_option("--half-width", ren.half_width);
    s_ren->add_flag("--no-r3", ren.no_r3, "do not scale by |x|^3");
    s_ren->add_option("--out", ren.out);

    AcceptArgs acc;
    auto* s_acc = app.add_subcommand("accept", "acceptance criteria");
    s_acc->add_option("--suite", acc.suites, "criterion key or number, or all")->delimiter(',');
    s_acc->add_option("--out", acc.out, "write the acceptance report here");
    s_acc->add_flag("--full", acc.full, "long large-time run");

    std::string report_dir;
    auto* s_rep = app.add_subcommand("report", "print the verdicts of a report directory");
    s_rep->add_option("--in", report_dir)->required()->check(CLI::ExistingDirectory);

    KernelTableArgs kt;
    auto* s_kt = app.add_subcommand("kernel-table", "sampled F, frakF and Psi as CSV");
    s_kt->add_option("--t", kt.t);
    s_kt->add_option("--radii", kt.radii)->delimiter(',');
    s_kt->add_option("--directions", kt.directions)->check(CLI::Range(1, 4096));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*s_sim) return cmd_simulate(sim, command);
        if (*s_probe) return cmd_probe(probe, command);
        if (*s_an) return cmd_analyze(an, command);
        if (*s_ver) return cmd_verify(ver, command);
        if (*s_ren) return cmd_render(ren);
        if (*s_acc) return cmd_accept(acc, command);
        if (*s_rep) return cmd_report(report_dir);
        if (*s_kt) return cmd_kernel_table(kt);
    } catch (const UsageError& e) {
        fmt::print(stderr, "usage error: {}\n", e.what());
        return kExitUsage;
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
