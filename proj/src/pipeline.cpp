#include "hexns/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "hexns/asymptotics.hpp"
#include "hexns/error.hpp"
#include "hexns/farfield.hpp"

namespace hexns {

std::vector<BumpSpec> config_bumps(const SimConfig& c) {
    if (!c.bumps.empty()) return c.bumps;
    if (c.init_class == SymmetryClass::Radial) return {BumpSpec{{0.0, 0.0}, c.datum_support(), 1.0}};
    return random_bumps(c.box, c.seed, c.bump_count, c.support_radius);
}

Datum build_datum(const SimConfig& c) {
    return make_datum_full(c.n, c.box, config_bumps(c), c.init_class, c.seed);
}

std::vector<ProbeRecord> probe_snapshot(const GridScalarField& omega, const MomentumFlux& flux, double t,
                                        const std::vector<double>& multipliers, double support_radius, int m,
                                        const std::vector<Component>& components, double support_threshold) {
    const BiotSavart bs(omega, support_threshold);
    const HexInvariant inv = invariant_from_flux(flux);
    std::vector<ProbeRecord> out;
    for (double mult : multipliers) {
        ProbeRecord rec;
        rec.t = t;
        rec.radius_multiplier = mult;
        rec.R = mult * support_radius;
        rec.support_radius = bs.support_radius();
        rec.dropped_mass = bs.dropped_mass();
        rec.L = inv.L;
        if (inv.defined()) rec.alpha = inv.hexagon->alpha;
        const VelocityProfiles vp = velocity_profiles(bs, t, rec.R, m);
        for (Component c : components) {
            ComponentProbe cp;
            cp.profile = c == Component::U1 ? vp.u1 : c == Component::U2 ? vp.u2 : vp.speed;
            if (c != Component::Speed) {
                cp.fit = fit_sinusoid(cp.profile);
                if (inv.defined()) cp.comparison = compare_to_prediction(*cp.fit, inv, c);
            }
            if (c == Component::Speed) rec.isotropy = isotropy_check(cp.profile, inv);
            rec.components.push_back(std::move(cp));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

double minima_spacing_error(const std::vector<double>& minima) {
    if (minima.size() != 6) return std::numeric_limits<double>::infinity();
    constexpr double third = std::numbers::pi / 3;
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        const double gap = i + 1 < 6 ? minima[i + 1] - minima[i] : minima[0] + 2 * std::numbers::pi - minima[5];
        worst = std::max(worst, std::fabs(gap - third));
    }
    return worst;
}

std::vector<Verdict> probe_verdicts(const std::vector<ProbeRecord>& records, std::size_t first,
                                    const ProbeCriteria& crit, ojson& summary, const std::string& summary_pointer) {
    std::vector<Verdict> v;
    std::vector<double> radii, cv, mean;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ProbeRecord& r = records[i];
        const std::string base = fmt::format("/probes/{}", first + i);
        const std::string tag = fmt::format("t={:g} R={:g}", r.t, r.R);
        if (r.isotropy) {
            v.push_back(make_verdict("speed cv " + tag, r.isotropy->cv, "<", crit.max_cv, base + "/isotropy/cv"));
            v.push_back(make_verdict("min speed " + tag, r.isotropy->min_value, ">", 0.0, base + "/isotropy/min_value"));
            radii.push_back(r.R);
            cv.push_back(r.isotropy->cv);
            mean.push_back(r.isotropy->mean);
        }
        for (std::size_t k = 0; k < r.components.size(); ++k) {
            const ComponentProbe& c = r.components[k];
            if (!c.comparison) continue;
            const std::string cbase = fmt::format("{}/components/{}", base, k);
            const std::string name = to_string(c.profile.component);
            v.push_back(make_verdict("minima spacing " + name + " " + tag, minima_spacing_error(c.fit->minima), "<=",
                                     crit.max_spacing_error, cbase + "/fit/minima"));
            v.push_back(make_verdict("phase " + name + " " + tag, c.comparison->signed_phase_error, "<=",
                                     crit.max_phase_error, cbase + "/comparison/signed_phase_error"));
        }
    }
    summary = ojson::object();
    if (radii.size() >= 2) {
        double increase = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < cv.size(); ++i) increase = std::max(increase, cv[i + 1] - cv[i]);
        const std::size_t a = radii.size() - 2, b = radii.size() - 1;
        const double lim = richardson_limit(radii[a], mean[a], radii[b], mean[b]);
        const double L = records.front().L;
        const double err = L > 0.0 ? std::fabs(lim - L) / L : std::numeric_limits<double>::infinity();
        summary = {{"radii", radii},       {"cv", cv},         {"mean", mean}, {"cv_max_increase", increase},
                   {"mean_limit", lim},    {"L", L},           {"mean_error", err}};
        v.push_back(make_verdict("speed cv decreasing in R", increase, "<", 0.0, summary_pointer + "/cv_max_increase"));
        v.push_back(make_verdict("extrapolated mean vs L", err, "<=", crit.max_mean_error,
                                 summary_pointer + "/mean_error"));
    }
    return v;
}

SimulationOutput simulate(const SimConfig& c, const std::string& checkpoint_dir) {
    SimulationOutput out;
    out.datum = build_datum(c);
    RunOptions opt = c.run_options();
    if (c.checkpoints) opt.checkpoint_dir = checkpoint_dir;
    out.trajectory = run(initial_state(out.datum.omega), opt);
    const Trajectory& tr = out.trajectory;

    RunReport& rep = out.report;
    rep.kind = "simulate";
    rep.config = config_to_json(c);
    rep.provenance.seed = c.seed;
    rep.series = tr.series;
    for (const auto& s : tr.snapshots) rep.snapshots.push_back(snapshot_row(s, tr.initial_energy));

    const double rs = c.datum_support();
    const NonsymmetryResult ns = nonsymmetry_check(out.datum.u);
    rep.results["datum"] = {{"support_radius", rs},
                            {"energy", tr.initial_energy},
                            {"nonsymmetric", ns.nonsymmetric},
                            {"u0_tensor", {ns.matrix.m11, ns.matrix.m12, ns.matrix.m22}},
                            {"short_time_slope", short_time_slope(out.datum.u)}};

    std::size_t worst = 0;
    for (std::size_t i = 0; i < rep.snapshots.size(); ++i)
        if (rep.snapshots[i].energy_residual > rep.snapshots[worst].energy_residual) worst = i;
    if (!rep.snapshots.empty())
        rep.verdicts.push_back(make_verdict("energy equality", rep.snapshots[worst].energy_residual, "<=", 1e-6,
                                            fmt::format("/snapshots/{}/energy_residual", worst)));

    rep.results["probe_summary"] = ojson::array();
    for (double t : c.probe_times) {
        const auto it = std::find_if(tr.snapshots.begin(), tr.snapshots.end(), [&](const Snapshot& s) {
            return std::fabs(s.time - t) <= 1e-9 * std::max(1.0, t);
        });
        if (it == tr.snapshots.end()) throw DomainError(fmt::format("no snapshot at probe time {}", t));
        const auto recs = probe_snapshot(*it->omega, it->flux, it->time, c.probe_radii, rs, c.probe_m,
                                         c.probe_components, c.probe_support_threshold);
        const std::size_t first = rep.probes.size();
        const std::size_t k = rep.results["probe_summary"].size();
        ojson summary;
        const auto v = probe_verdicts(recs, first, ProbeCriteria{}, summary, fmt::format("/results/probe_summary/{}", k));
        rep.results["probe_summary"].push_back(summary);
        rep.probes.insert(rep.probes.end(), recs.begin(), recs.end());
        rep.verdicts.insert(rep.verdicts.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace hexns
