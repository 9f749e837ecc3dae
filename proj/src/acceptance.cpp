#include "hexns/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hexns/asymptotics.hpp"
#include "hexns/error.hpp"
#include "hexns/farfield.hpp"
#include "hexns/initdata.hpp"
#include "hexns/kernels.hpp"
#include "hexns/pipeline.hpp"
#include "hexns/solver.hpp"
#include "hexns/verify.hpp"

namespace hexns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double angle_distance(double x, double y) { return std::fabs(std::remainder(x - y, 2 * kPi)); }

MomentumFlux random_flux(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MomentumFlux f;
    f.a = u(rng) + 1e-3;
    f.d = u(rng) + 1e-3;
    f.b = 2.0 * std::sqrt(f.a * f.d) * (2.0 * u(rng) - 1.0);
    return f;
}

double flag(bool b) { return b ? 1.0 : 0.0; }

// Steps with the CFL policy and lands exactly on T.
FlowState advance(const Solver& sol, FlowState s, double T, double fraction = 0.5) {
    while (s.time < T - 1e-15) s = sol.step(s, std::min(sol.suggest_dt(s, fraction), T - s.time));
    return s;
}

// Generic seed-42 datum of the main-theorem run: n = 512, box = 16 (8
// support diameters), support radius 1.
struct MainRun {
    Datum datum;
    Trajectory traj;
};

const MainRun& main_run() {
    static const MainRun r = [] {
        MainRun out;
        out.datum = make_datum_full(512, 16.0, random_bumps(16.0, 42, 3, 1.0), SymmetryClass::Generic, 42);
        RunOptions o;
        o.final_time = 0.02;
        o.snapshot_every = 0.01;
        out.traj = run(initial_state(out.datum.omega), o);
        return out;
    }();
    return r;
}

// ---------------------------------------------------------------------------

void closed_form_isotropy(CriterionOutcome& out) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, worst_L = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const MomentumFlux f = random_flux(rng);
        const double L = invariant_from_flux(f).L;
        double lo = kInf, hi = 0.0, sum = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double r = 0.5 + 19.5 * u(rng), th = 2 * kPi * u(rng);
            const Vec2 g = grad_H({r * std::cos(th), r * std::sin(th)}, f);
            const double s = r * r * r * std::hypot(g[0], g[1]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            sum += s;
            if (L > 0.0) worst_L = std::max(worst_L, std::fabs(s / L - 1.0));
        }
        worst = std::max(worst, (hi - lo) / (sum / 100));
    }
    out.measurements = {{"triples", 100}, {"points_per_triple", 100}, {"max_variation", worst},
                        {"max_deviation_from_L", worst_L}};
    out.verdicts.push_back(make_verdict("angular variation of |x|^3 |grad H|", worst, "<=", 1e-12,
                                        "/measurements/max_variation"));
    out.headline = fmt::format("max relative angular variation {:.3g}", worst);
}

void hexagon_algebra(CriterionOutcome& out) {
    std::mt19937_64 rng(2);
    double sin_res = 0.0, pow_res = 0.0, rot_res = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const HexInvariant inv = invariant_from_flux(random_flux(rng));
        if (!inv.defined()) continue;
        const HexGeometry& g = *inv.hexagon;
        for (int k = 0; k < 6; ++k) {
            // Extended precision so the residual reflects the vertex, not its evaluation.
            const long double arg = 3.0L * g.vertex_angles[k] + static_cast<long double>(g.alpha);
            sin_res = std::max(sin_res, static_cast<double>(std::fabs(std::sin(arg))));
            const std::complex<double> v(g.vertices[k][0], g.vertices[k][1]);
            const std::complex<double> v2 = v * v, v6 = v2 * v2 * v2;
            pow_res = std::max(pow_res, std::abs(v6 - std::polar(1.0, -2 * g.alpha)));
            double best = kInf;
            for (int j = 0; j < 6; ++j)
                best = std::min(best, angle_distance(g.vertex_angles[k] + kPi / 6, g.horizontal_angles[j]));
            rot_res = std::max(rot_res, best);
        }
    }
    out.measurements = {{"samples", 1000}, {"max_sin_residual", sin_res}, {"max_power_residual", pow_res},
                        {"max_rotation_residual", rot_res}};
    out.verdicts.push_back(make_verdict("|sin(3 theta_k + alpha)|", sin_res, "<=", 1e-15, "/measurements/max_sin_residual"));
    out.verdicts.push_back(
        make_verdict("|vertex^6 - exp(-2 i alpha)|", pow_res, "<=", 1e-12, "/measurements/max_power_residual"));
    out.verdicts.push_back(
        make_verdict("pi/6 rotation between hexagons", rot_res, "<=", 1e-12, "/measurements/max_rotation_residual"));
    out.headline = fmt::format("sin {:.2g}, power {:.2g}, rotation {:.2g}", sin_res, pow_res, rot_res);
}

void kernel_identities(CriterionOutcome& out) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double scaling = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double r = 0.05 * std::pow(120.0, u(rng)), th = 2 * kPi * u(rng);
        const Point2 x{r * std::cos(th), r * std::sin(th)};
        const double t = std::pow(10.0, -2.0 + 3.0 * u(rng));
        const Tensor3 f = oseen_kernel(x, t);
        const Tensor3 g = std::pow(t, -1.5) * oseen_kernel((1.0 / std::sqrt(t)) * x, 1.0);
        scaling = std::max(scaling, (f - g).frobenius() / f.frobenius());
    }
    double moment = 0.0;
    ojson moments = ojson::array();
    for (double R : {0.5, 1.0, 5.0})
        for (double t : {0.1, 1.0}) {
            const MomentResult m = kernel_moment(R, t);
            moment = std::max(moment, m.value.max_abs());
            moments.push_back({{"R", R}, {"t", t}, {"max_abs", m.value.max_abs()}});
        }
    const double psi1 = remainder_magnitude(1.0), psi8 = remainder_magnitude(8.0);
    const double ratio = psi1 / psi8;
    out.measurements = {{"max_scaling_error", scaling}, {"moments", moments},  {"max_moment", moment},
                        {"psi_at_1", psi1},             {"psi_at_8", psi8},     {"psi_ratio", ratio}};
    out.verdicts.push_back(make_verdict("scaling of F", scaling, "<=", 1e-9, "/measurements/max_scaling_error"));
    out.verdicts.push_back(make_verdict("ball moments of F", moment, "<=", 1e-8, "/measurements/max_moment"));
    out.verdicts.push_back(make_verdict("Psi decay between |x|/sqrt(t) = 1 and 8", ratio, ">=", 1e6,
                                        "/measurements/psi_ratio"));
    out.headline = fmt::format("scaling {:.2g}, moments {:.2g}, Psi ratio {:.3g}", scaling, moment, ratio);
}

void solver_correctness(CriterionOutcome& out) {
    // Radial vorticity: the nonlinear term vanishes and the run is pure heat flow.
    const int n = 256;
    const double box = 16.0;
    const Datum radial = make_datum_full(n, box, {BumpSpec{{0, 0}, 3.5, 2.0}}, SymmetryClass::Radial, 0);
    const Solver sol(n, box);
    FlowState s = initial_state(radial.omega);
    for (int i = 0; i < 100; ++i) s = sol.step(s, 5e-3);
    const GridScalarField heat = heat_multiplier(radial.omega, s.time);
    double heat_err = 0.0;
    for (std::size_t i = 0; i < heat.size(); ++i)
        heat_err = std::max(heat_err, std::fabs(s.omega.values[i] - heat.values[i]));

    // Energy equality on a resolved generic datum over [0, 1].
    const Datum gen = make_datum_full(n, box, random_bumps(box, 42, 3, 3.0), SymmetryClass::Generic, 42);
    FlowState g = initial_state(gen.omega);
    const double e0 = g.flux.da + g.flux.dd;
    double energy_res = 0.0;
    long steps = 0;
    while (g.time < 1.0 - 1e-15) {
        g = sol.step(g, std::min(sol.suggest_dt(g, 0.5), 1.0 - g.time));
        energy_res = std::max(energy_res, energy_equality_residual(g, e0));
        ++steps;
    }
    out.measurements = {{"heat_max_error", heat_err},
                        {"heat_relative_error", heat_err / radial.omega.max_abs()},
                        {"heat_final_time", s.time},
                        {"energy_max_residual", energy_res},
                        {"energy_steps", steps}};
    out.verdicts.push_back(make_verdict("radial run vs heat flow (max norm)", heat_err, "<=", 1e-10,
                                        "/measurements/heat_max_error"));
    out.verdicts.push_back(make_verdict("energy equality residual on [0,1]", energy_res, "<=", 1e-6,
                                        "/measurements/energy_max_residual"));
    out.headline = fmt::format("heat error {:.2g}, energy residual {:.2g}", heat_err, energy_res);
}

void main_theorem(CriterionOutcome& out) {
    const MainRun& mr = main_run();
    const auto it = std::find_if(mr.traj.snapshots.begin(), mr.traj.snapshots.end(),
                                 [](const Snapshot& s) { return std::fabs(s.time - 0.01) < 1e-12; });
    if (it == mr.traj.snapshots.end()) throw Error("main run has no snapshot at t = 0.01");
    const auto recs = probe_snapshot(*it->omega, it->flux, it->time, {3.0, 4.0, 6.0}, 1.0, 512,
                                     {Component::U1, Component::U2, Component::Speed}, 1e-8);
    ojson summary;
    auto v = probe_verdicts(recs, 0, ProbeCriteria{}, summary, "/measurements/summary");
    ojson probes = ojson::array();
    for (const auto& r : recs) probes.push_back(to_json(r));
    for (auto& verdict : v)
        if (verdict.evidence.rfind("/probes/", 0) == 0) verdict.evidence = "/measurements" + verdict.evidence;
    // hexagon detection is part of (c)
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (std::size_t k = 0; k < recs[i].components.size(); ++k) {
            const auto& c = recs[i].components[k];
            if (c.profile.component == Component::Speed) continue;
            v.push_back(make_verdict(fmt::format("six minima {} R={}", to_string(c.profile.component), recs[i].R),
                                     static_cast<double>(c.fit->minima.size()), "==", 6.0,
                                     fmt::format("/measurements/probes/{}/components/{}/fit/minima", i, k)));
        }
    out.measurements = {{"n", 512}, {"box", 16.0}, {"seed", 42}, {"support_radius", 1.0}, {"t", it->time},
                        {"support_threshold", 1e-8}, {"probes", probes}, {"summary", summary}};
    out.verdicts = std::move(v);
    const auto cvs = summary.value("cv", std::vector<double>{});
    out.headline = fmt::format("cv {:.3g}, mean error {:.3g}", fmt::join(cvs, " "), summary.value("mean_error", kInf));
}

void short_time(CriterionOutcome& out) {
    const int n = 256;
    const double box = 16.0, t = 1e-3;
    const Datum d = make_datum_full(n, box, random_bumps(box, 42, 3, 3.0), SymmetryClass::Generic, 42);
    const FlowState s0 = initial_state(d.omega);
    const double slope = short_time_slope(velocity_from_vorticity(s0.omega));
    const Solver sol(n, box);
    const FlowState s = advance(sol, s0, t);
    const double L = invariant_from_flux(s.flux).L;
    const double rel = std::fabs(L / t / slope - 1.0);
    out.measurements = {{"t", t}, {"L", L}, {"L_over_t", L / t}, {"quadrature_slope", slope}, {"relative_error", rel}};
    out.verdicts.push_back(make_verdict("L(t)/t vs u0 quadrature slope", rel, "<=", 0.01, "/measurements/relative_error"));
    out.headline = fmt::format("L/t = {:.6g}, slope {:.6g}, relative error {:.2g}", L / t, slope, rel);
}

void null_cases(CriterionOutcome& out) {
    const int n = 128;
    const double box = 16.0;
    RunOptions o;
    o.final_time = 0.5;
    o.snapshot_every = 0.1;

    const Datum sym = make_datum_full(n, box, {}, SymmetryClass::Symmetric, 12);
    const Trajectory ts = run(initial_state(sym.omega), o);
    double z_ratio = 0.0;
    for (const auto& row : ts.series) {
        const double tr = row.flux.a + row.flux.d;
        if (tr > 0.0) z_ratio = std::max(z_ratio, std::hypot(row.flux.a - row.flux.d, row.flux.b) / tr);
    }
    out.measurements["symmetric"] = {{"max_z_over_trace", z_ratio}, {"rows", ts.series.size()}};
    out.verdicts.push_back(make_verdict("symmetric |z| / (a + d)", z_ratio, "<=", 1e-10,
                                        "/measurements/symmetric/max_z_over_trace"));

    for (auto c : {SymmetryClass::HalfSymmetricI, SymmetryClass::HalfSymmetricII}) {
        const Datum d = make_datum_full(n, box, {}, c, 12);
        const FlowState s0 = initial_state(d.omega);
        // alpha(0) is the direction of z'(0).
        const double alpha0 = std::atan2(s0.flux.db, s0.flux.dd - s0.flux.da);
        const Trajectory tr = run(s0, o);
        double drift = 0.0, speed = 0.0;
        for (const auto& row : tr.series) {
            if (!row.alpha) continue;
            drift = std::max(drift, angle_distance(*row.alpha, alpha0));
            speed = std::max(speed, *row.hex_speed);
        }
        const std::string key = to_string(c);
        out.measurements[key] = {{"alpha0", alpha0}, {"max_alpha_drift", drift}, {"max_hex_speed", speed}};
        out.verdicts.push_back(
            make_verdict(key + " alpha drift", drift, "<=", 1e-3, "/measurements/" + key + "/max_alpha_drift"));
        out.verdicts.push_back(
            make_verdict(key + " hex speed", speed, "<", 1e-8, "/measurements/" + key + "/max_hex_speed"));
    }
    out.headline = fmt::format("symmetric |z|/(a+d) {:.2g}", z_ratio);
}

void angular_speed(CriterionOutcome& out) {
    const MainRun& mr = main_run();
    double worst = 0.0;
    std::size_t rows = 0;
    for (const auto& row : mr.traj.series) {
        if (!row.hex_speed || !row.bound) continue;
        worst = std::max(worst, *row.hex_speed / *row.bound);
        ++rows;
    }
    // hex_speed against centred differences of alpha at two fixed steps.
    const int n = 128;
    const double box = 16.0, T = 0.02, t_min = 0.005;
    const Datum d = make_datum_full(n, box, random_bumps(box, 42, 3, 3.0), SymmetryClass::Generic, 42);
    const Solver sol(n, box);
    std::vector<double> errs;
    double ref = 0.0;
    for (double dt : {4e-4, 2e-4}) {
        FlowState s = initial_state(d.omega);
        std::vector<double> t, a, hs;
        const long steps = std::lround(T / dt);
        for (long i = 0; i < steps; ++i) {
            s = sol.step(s, dt);
            const HexInvariant inv = invariant_from_flux(s.flux);
            if (!inv.defined()) throw Error("hexagon undefined along the angular-speed run");
            t.push_back(s.time);
            a.push_back(inv.hexagon->alpha);
            hs.push_back(inv.hexagon->hex_speed);
        }
        double err = 0.0;
        for (std::size_t i = 1; i + 1 < t.size(); ++i) {
            if (t[i] < t_min) continue;
            const double fd = std::remainder(a[i + 1] - a[i - 1], 2 * kPi) / (t[i + 1] - t[i - 1]);
            err = std::max(err, std::fabs(std::fabs(fd) - hs[i]));
            ref = std::max(ref, hs[i]);
        }
        errs.push_back(err);
    }
    const double order = std::log2(errs[0] / errs[1]);
    out.measurements = {{"bound_rows", rows},
                        {"max_speed_over_bound", worst},
                        {"fd_steps", {4e-4, 2e-4}},
                        {"fd_window", {t_min, T}},
                        {"fd_max_error", errs},
                        {"max_hex_speed", ref},
                        {"fd_order", order}};
    out.verdicts.push_back(make_verdict("hex_speed / bound", worst, "<=", 1.0 + 1e-9, "/measurements/max_speed_over_bound"));
    out.verdicts.push_back(make_verdict("observed order of FD agreement", order, ">=", 1.8, "/measurements/fd_order"));
    out.headline = fmt::format("max speed/bound {:.4f}, FD order {:.2f}", worst, order);
}

void lemma_harnesses(CriterionOutcome& out) {
    const std::vector<double> radii{4, 8, 16};
    ojson tables = ojson::array();
    auto table_verdicts = [&](const std::string& name, bool decreasing, double final_ratio, std::size_t idx) {
        out.verdicts.push_back(make_verdict(name + " decreasing", flag(decreasing), "==", 1.0,
                                            fmt::format("/measurements/duhamel/{}/strictly_decreasing", idx)));
        out.verdicts.push_back(make_verdict(name + " final residual / scale", final_ratio, "<=", 0.05,
                                            fmt::format("/measurements/duhamel/{}/final_ratio", idx)));
    };
    ojson duhamel = ojson::array();
    for (double a : {0.0, 0.7}) {
        SyntheticTensorField w;
        w.matrix = {1.0, 0.3, -0.5};
        w.exponent = a;
        const DuhamelTable t = duhamel_asymptotics_check(w, 1.0, radii);
        duhamel.push_back({{"exponent", a},
                           {"scale", t.scale},
                           {"strictly_decreasing", t.strictly_decreasing},
                           {"final_ratio", t.final_ratio},
                           {"table", table_json(to_table(fmt::format("duhamel_a{}", a), t))}});
        table_verdicts(fmt::format("duhamel a={}", a), t.strictly_decreasing, t.final_ratio, duhamel.size() - 1);
    }
    out.measurements["duhamel"] = duhamel;

    ojson heat = ojson::array();
    struct Case {
        HeatField field;
        HeatCase c;
    };
    for (const Case& hc : {Case{HeatField::Gaussian, HeatCase::I}, Case{HeatField::GradientDecay, HeatCase::II},
                           Case{HeatField::LaplacianDecay, HeatCase::III}, Case{HeatField::CubicTail, HeatCase::I}}) {
        const HeatGenerator g{hc.field};
        const HeatTable t = heat_tail_check(g, hc.c, 1.0, radii);
        const std::size_t idx = heat.size();
        heat.push_back({{"case", to_string(hc.c)},
                        {"field", to_string(hc.field)},
                        {"finite", t.finite},
                        {"strictly_decreasing", t.strictly_decreasing},
                        {"non_vanishing", t.non_vanishing},
                        {"pass", t.pass},
                        {"table", table_json(to_table("heat_" + to_string(hc.field), t))}});
        const std::string name = fmt::format("heat case {} ({})", to_string(hc.c), to_string(hc.field));
        out.verdicts.push_back(
            make_verdict(name + " bounded", flag(t.finite), "==", 1.0, fmt::format("/measurements/heat/{}/finite", idx)));
        if (g.boundary())
            out.verdicts.push_back(make_verdict(name + " non-vanishing", flag(t.non_vanishing), "==", 1.0,
                                                fmt::format("/measurements/heat/{}/non_vanishing", idx)));
        else
            out.verdicts.push_back(make_verdict(name + " decreasing", flag(t.strictly_decreasing), "==", 1.0,
                                                fmt::format("/measurements/heat/{}/strictly_decreasing", idx)));
    }
    out.measurements["heat"] = heat;

    const HeatTScaling sc = heat_T_scaling({HeatField::GradientDecay}, HeatCase::II, 0.25, 4, radii);
    out.measurements["T_scaling"] = {{"max_slope", sc.max_slope}, {"table", table_json(to_table("heat_T_scaling", sc))}};
    out.verdicts.push_back(
        make_verdict("case ii growth exponent in T", sc.max_slope, "<=", 3.0, "/measurements/T_scaling/max_slope"));
    out.headline = fmt::format("duhamel ratios {:.2g} / {:.2g}, T slope {:.2f}",
                               duhamel[0]["final_ratio"].get<double>(), duhamel[1]["final_ratio"].get<double>(),
                               sc.max_slope);
}

void large_time(CriterionOutcome& out, bool full) {
    const int n = full ? 256 : 128;
    const double box = 16.0;
    const double T = full ? 32.0 : 8.0;
    const Datum d = make_datum_full(n, box, random_bumps(box, 42, 3, 2.0), SymmetryClass::Generic, 42);
    RunOptions o;
    o.final_time = T;
    o.snapshot_every = full ? 0.5 : 0.25;
    o.dt_max = 0.02;
    const Trajectory tr = run(initial_state(d.omega), o);

    std::vector<double> t, inc;
    std::optional<double> prev;
    for (const auto& s : tr.snapshots) {
        const HexInvariant inv = invariant_from_flux(s.flux);
        if (!inv.defined()) continue;
        if (prev) {
            t.push_back(s.time);
            inc.push_back(angle_distance(inv.hexagon->alpha, *prev));
        }
        prev = inv.hexagon->alpha;
    }
    if (inc.size() < 4) throw Error("too few snapshots for the late window");
    const std::size_t start = inc.size() / 2;
    double growth = -kInf;
    for (std::size_t i = start + 1; i < inc.size(); ++i) growth = std::max(growth, inc[i] - inc[i - 1]);

    const GridVectorField u0 = velocity_from_vorticity(*tr.snapshots.front().omega);
    const L2DecayResult l2 = l2_decay_track(tr, u0);
    double heat_ratio = 0.0;
    for (const auto& r : l2.rows) heat_ratio = std::max(heat_ratio, r.heat_energy / r.heat_bound);

    out.measurements = {{"n", n},
                        {"final_time", T},
                        {"late_window_start", t[start]},
                        {"alpha_increment_t", t},
                        {"alpha_increments", inc},
                        {"max_late_increment_growth", growth},
                        {"C", l2.C},
                        {"max_heat_energy_over_bound", heat_ratio},
                        {"energy_non_increasing", l2.energy_non_increasing},
                        {"energy_exponent", l2.energy_exponent},
                        {"difference_exponent", l2.difference_exponent},
                        {"l2", table_json(to_table("l2_decay", l2))}};
    out.verdicts.push_back(make_verdict("late alpha increments shrink", growth, "<", 0.0,
                                        "/measurements/max_late_increment_growth"));
    out.verdicts.push_back(make_verdict("||e^{t Delta} u0||^2 (1+t) / C", heat_ratio, "<=", 1.0,
                                        "/measurements/max_heat_energy_over_bound"));
    out.headline = fmt::format("T={} n={}, late increment growth {:.2g}, heat ratio {:.3f}", T, n, growth, heat_ratio);
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> list{
        {1, "isotropy", "closed-form speed isotropy", 1.0},
        {2, "hexagon", "hexagon algebra", 1.0},
        {3, "kernels", "kernel identities", 60.0},
        {4, "solver", "solver correctness", 300.0},
        {5, "main", "main-theorem far field", 1800.0},
        {6, "slope", "short-time slope", 300.0},
        {7, "null", "null and rigidity cases", 600.0},
        {8, "angular_speed", "angular-speed bound", 1800.0},
        {9, "lemmas", "lemma harnesses", 900.0},
        {10, "large_time", "large-time behaviour", 3600.0},
    };
    return list;
}

int criterion_id(const std::string& name) {
    std::string s = name;
    if (s.rfind("accept_", 0) == 0) s = s.substr(7);
    for (const auto& c : acceptance_criteria())
        if (s == c.key || s == std::to_string(c.id)) return c.id;
    throw DomainError("unknown acceptance suite '" + name + "'");
}

bool CriterionOutcome::pass() const {
    return !verdicts.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

CriterionOutcome run_criterion(int id, const AcceptOptions& opt) {
    const auto& list = acceptance_criteria();
    const auto it = std::find_if(list.begin(), list.end(), [&](const CriterionInfo& c) { return c.id == id; });
    if (it == list.end()) throw DomainError(fmt::format("no acceptance criterion {}", id));
    CriterionOutcome out;
    out.info = *it;
    const char* env = std::getenv("HEXNS_ACCEPT_FULL");
    const bool full = opt.full || (env && std::string(env) == "1");
    const auto t0 = std::chrono::steady_clock::now();
    switch (id) {
        case 1: closed_form_isotropy(out); break;
        case 2: hexagon_algebra(out); break;
        case 3: kernel_identities(out); break;
        case 4: solver_correctness(out); break;
        case 5: main_theorem(out); break;
        case 6: short_time(out); break;
        case 7: null_cases(out); break;
        case 8: angular_speed(out); break;
        case 9: lemma_harnesses(out); break;
        case 10: large_time(out, full); break;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.verdicts.push_back(make_verdict("runtime (s)", out.seconds, "<", out.info.budget_seconds, "/seconds"));
    return out;
}

std::string criterion_line(const CriterionOutcome& o) {
    std::string line = fmt::format("accept_{} {} {} ({:.1f} s): {}", o.info.id, o.pass() ? "PASS" : "FAIL",
                                   o.info.title, o.seconds, o.headline);
    for (const auto& v : o.verdicts)
        if (!v.pass) line += fmt::format(" | failed: {} = {:.6g}, need {} {:.6g}", v.name, v.value, v.relation, v.threshold);
    return line;
}

RunReport acceptance_report(const std::vector<CriterionOutcome>& outcomes) {
    RunReport r;
    r.kind = "accept";
    ojson crit = ojson::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        const std::string base = fmt::format("/results/criteria/{}", i);
        crit.push_back({{"id", o.info.id},
                        {"key", o.info.key},
                        {"title", o.info.title},
                        {"pass", o.pass()},
                        {"seconds", o.seconds},
                        {"budget_seconds", o.info.budget_seconds},
                        {"headline", o.headline},
                        {"measurements", o.measurements}});
        for (Verdict v : o.verdicts) {
            v.name = fmt::format("accept_{}: {}", o.info.id, v.name);
            v.evidence = base + v.evidence;
            r.verdicts.push_back(v);
        }
    }
    r.results["criteria"] = crit;
    return r;
}

}  // namespace hexns
