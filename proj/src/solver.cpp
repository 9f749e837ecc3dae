#include "hexns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <unordered_map>

#include <boost/math/quadrature/gauss.hpp>

#include <fmt/format.h>

#include "hexns/checkpoint.hpp"
#include "hexns/error.hpp"

namespace hexns {

namespace {

using cd = std::complex<double>;

struct Workspace {
    Spectrum trunc, psi, u1, u2, w1, w2;
    std::vector<double> p_u1, p_u2, p_w1, p_w2, p_prod;
};

double k2_at(const Spectral& sp, int iy, int ix) {
    return sp.kx(ix) * sp.kx(ix) + sp.ky(iy) * sp.ky(iy);
}

// psi_hat = -omega_hat / |k|^2, then u = (-d2 psi, d1 psi).
void velocity_spectrum(const Spectral& sp, const Spectrum& w, Workspace& ws) {
    const int n = sp.n(), m = sp.nk();
    ws.psi.resize(w.size());
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            const double k2 = k2_at(sp, iy, ix);
            ws.psi[i] = k2 == 0.0 ? cd(0.0) : -w[i] / k2;
        }
    sp.d2(ws.psi, ws.u1);
    for (auto& v : ws.u1) v = -v;
    sp.d1(ws.psi, ws.u2);
}

// Quadratic diagnostics (int u1^2, int 2 u1 u2, int u2^2, 2 int |grad u|^2)
// from per-mode weights p_k standing for |omega_hat_k|^2 (or its time
// integral).  Nyquist rows and columns follow the derivative convention.
struct Quadratics {
    std::array<double, 3> flux{};
    double dissipation = 0.0;
};

Quadratics quadratics(const Spectral& sp, const std::vector<double>& p) {
    const int n = sp.n(), m = sp.nk();
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, sw = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double ky = sp.nyquist_y(iy) ? 0.0 : sp.ky(iy);
        for (int ix = 0; ix < m; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            const double k2 = k2_at(sp, iy, ix);
            if (k2 == 0.0) continue;
            const double kx = sp.nyquist_x(ix) ? 0.0 : sp.kx(ix);
            const double w = sp.hermitian_weight(ix) * p[i];
            const double inv4 = 1.0 / (k2 * k2);
            s11 += w * ky * ky * inv4;
            s12 -= w * kx * ky * inv4;
            s22 += w * kx * kx * inv4;
            sw += w * (kx * kx + ky * ky) / k2;
        }
    }
    const double b = sp.box();
    const double c = b * b / (static_cast<double>(n) * n * n * n);
    Quadratics q;
    q.flux = {s11 * c, 2.0 * s12 * c, s22 * c};
    q.dissipation = 2.0 * sw * c;
    return q;
}

std::vector<double> mode_power(const Spectrum& w) {
    std::vector<double> p(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) p[i] = std::norm(w[i]);
    return p;
}

// N = -(u . grad omega), dealiased, zero mean.
// Both factors are truncated to the 2/3 set, so the retained part of the
// product is alias-free and conserves energy.
Spectrum nonlinear(Spectral& sp, const Spectrum& w_full, Workspace& ws) {
    const int n = sp.n(), m = sp.nk();
    ws.trunc.assign(w_full.begin(), w_full.end());
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < m; ++ix)
            if (!sp.dealias_keep(iy, ix)) ws.trunc[static_cast<std::size_t>(iy) * m + ix] = 0.0;
    const Spectrum& w = ws.trunc;
    velocity_spectrum(sp, w, ws);
    sp.d1(w, ws.w1);
    sp.d2(w, ws.w2);
    sp.inverse(ws.u1, ws.p_u1);
    sp.inverse(ws.u2, ws.p_u2);
    sp.inverse(ws.w1, ws.p_w1);
    sp.inverse(ws.w2, ws.p_w2);
    ws.p_prod.resize(ws.p_u1.size());
    for (std::size_t i = 0; i < ws.p_prod.size(); ++i)
        ws.p_prod[i] = -(ws.p_u1[i] * ws.p_w1[i] + ws.p_u2[i] * ws.p_w2[i]);
    Spectrum out;
    sp.forward(ws.p_prod, out);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < m; ++ix)
            if (!sp.dealias_keep(iy, ix)) out[static_cast<std::size_t>(iy) * m + ix] = 0.0;
    out[0] = 0.0;
    return out;
}

// phi_j(z) = sum_m z^m / (m + j)!, j = 1..3
std::array<double, 3> phi123(double z) {
    std::array<double, 3> f{};
    if (std::fabs(z) < 1.0) {
        for (int j = 1; j <= 3; ++j) {
            double fact = 1.0;
            for (int q = 2; q <= j; ++q) fact *= q;
            double term = 1.0 / fact, sum = term;
            for (int mm = 1; mm < 30; ++mm) {
                term *= z / (mm + j);
                sum += term;
            }
            f[j - 1] = sum;
        }
    } else {
        f[0] = std::expm1(z) / z;
        f[1] = (f[0] - 1.0) / z;
        f[2] = (f[1] - 0.5) / z;
    }
    return f;
}

// For kappa = |k|^2 and the basis H_p(s) = int_0^s e^{-kappa(s-r)} (r/dt)^p dr:
// J_p = int_0^dt e^{-kappa s} H_p(s) ds,  K_pq = int_0^dt H_p H_q ds.
struct StepIntegrals {
    std::array<double, 3> J{};
    std::array<std::array<double, 3>, 3> K{};
};

StepIntegrals step_integrals(double kappa, double dt) {
    using GL = boost::math::quadrature::gauss<double, 10>;
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    StepIntegrals out;
    auto add_node = [&](double s, double w) {
        const auto f = phi123(-kappa * s);
        const double H[3] = {s * f[0], s * s / dt * f[1], 2.0 * s * s * s / (dt * dt) * f[2]};
        const double e = std::exp(-kappa * s);
        for (int p = 0; p < 3; ++p) {
            out.J[p] += w * e * H[p];
            for (int q = 0; q < 3; ++q) out.K[p][q] += w * H[p] * H[q];
        }
    };
    auto panel = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            add_node(c + r * xs[i], r * ws[i]);
            add_node(c - r * xs[i], r * ws[i]);
        }
    };
    // geometric panels resolve the boundary layer of width 1/kappa
    double lo = 0.0, hi = std::min(dt, 1.0 / kappa);
    while (true) {
        panel(lo, hi);
        if (hi >= dt) break;
        lo = hi;
        hi = std::min(dt, 2.0 * hi);
    }
    return out;
}

void require_zero_mean(const GridScalarField& omega) {
    const double scale = std::max(omega.max_abs(), std::numeric_limits<double>::min());
    if (std::fabs(omega.mean()) > 1e-12 * scale)
        throw DomainError("vorticity must have zero mean");
}

GridVectorField velocity_any_mean(const GridScalarField& omega) {
    Spectral& sp = spectral_for(omega.n, omega.box);
    Workspace ws;
    Spectrum w = sp.forward(omega);
    velocity_spectrum(sp, w, ws);
    GridVectorField u;
    u.u1 = sp.inverse_field(ws.u1);
    u.u2 = sp.inverse_field(ws.u2);
    return u;
}

}  // namespace

GridVectorField velocity_from_vorticity(const GridScalarField& omega) {
    require_zero_mean(omega);
    return velocity_any_mean(omega);
}

double energy(const GridVectorField& u) {
    return grid_inner(u.u1, u.u1) + grid_inner(u.u2, u.u2);
}

double enstrophy(const GridScalarField& omega) { return grid_inner(omega, omega); }

double energy_of(const GridScalarField& omega) { return energy(velocity_from_vorticity(omega)); }

double energy_equality_residual(const FlowState& state, double initial_energy) {
    if (initial_energy == 0.0) return 0.0;
    const double e = state.flux.da + state.flux.dd;
    return std::fabs(e + state.dissipation_accum - initial_energy) / initial_energy;
}

FlowState initial_state(const GridScalarField& omega) {
    require_zero_mean(omega);
    Spectral& sp = spectral_for(omega.n, omega.box);
    FlowState s;
    s.omega = omega;
    const Quadratics q = quadratics(sp, mode_power(sp.forward(omega)));
    s.flux.da = q.flux[0];
    s.flux.db = q.flux[1];
    s.flux.dd = q.flux[2];
    return s;
}

Solver::Solver(int n, double box) : n_(n), box_(box) { require_valid_grid(n, box); }

// The mean mode never enters the velocity; states produced by step()
// carry only roundoff there, which is dropped rather than rechecked.
double Solver::stability_limit(const FlowState& s) const {
    const GridVectorField u = velocity_any_mean(s.omega);
    const double k0 = 2.0 * std::acos(-1.0) / box_;
    const double kmax = k0 * std::floor((n_ - 1) / 3.0);
    const double lam = kmax * (u.u1.max_abs() + u.u2.max_abs());
    if (lam == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::sqrt(2.0) / lam;
}

double Solver::suggest_dt(const FlowState& s, double fraction) const {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("cfl fraction must lie in (0, 1]");
    return fraction * stability_limit(s);
}

FlowState Solver::step(const FlowState& s, double dt) const {
    if (s.omega.n != n_ || s.omega.box != box_)
        throw DomainError("state grid does not match solver");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
    if (dt > stability_limit(s) * (1.0 + 1e-12)) throw DomainError("time step exceeds stability limit");

    Spectral& sp = spectral_for(n_, box_);
    Workspace ws;
    Spectrum w0 = sp.forward(s.omega);
    w0[0] = 0.0;
    const std::size_t ns = w0.size();
    const int m = sp.nk();
    // ETDRK4 coefficients per mode: half-step phi_1 and the three
    // full-step weights f1 = phi1 - 3 phi2 + 4 phi3, f2 = phi2 - 2 phi3,
    // f3 = -phi2 + 4 phi3 (all at z = -|k|^2 dt).
    std::vector<double> E(ns), Eh(ns), Qh(ns), F1(ns), F2(ns), F3(ns);
    for (int iy = 0; iy < n_; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            const double z = -k2_at(sp, iy, ix) * dt;
            const auto half = phi123(0.5 * z);
            const auto full = phi123(z);
            E[i] = std::exp(z);
            Eh[i] = std::exp(0.5 * z);
            Qh[i] = 0.5 * dt * half[0];
            F1[i] = dt * (full[0] - 3.0 * full[1] + 4.0 * full[2]);
            F2[i] = dt * (full[1] - 2.0 * full[2]);
            F3[i] = dt * (-full[1] + 4.0 * full[2]);
        }

    const Spectrum A = nonlinear(sp, w0, ws);
    Spectrum wa(ns);
    for (std::size_t i = 0; i < ns; ++i) wa[i] = Eh[i] * w0[i] + Qh[i] * A[i];
    const Spectrum B = nonlinear(sp, wa, ws);
    Spectrum wb(ns);
    for (std::size_t i = 0; i < ns; ++i) wb[i] = Eh[i] * w0[i] + Qh[i] * B[i];
    const Spectrum C = nonlinear(sp, wb, ws);
    Spectrum wc(ns);
    for (std::size_t i = 0; i < ns; ++i) wc[i] = Eh[i] * wa[i] + Qh[i] * (2.0 * C[i] - A[i]);
    const Spectrum D = nonlinear(sp, wc, ws);
    Spectrum w1(ns);
    for (std::size_t i = 0; i < ns; ++i)
        w1[i] = E[i] * w0[i] + F1[i] * A[i] + 2.0 * F2[i] * (B[i] + C[i]) + F3[i] * D[i];

    FlowState out;
    out.steps = s.steps + 1;
    for (const auto& v : w1)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw BlowUpError(fmt::format("non-finite vorticity at step {}", out.steps), out.steps);

    // int_0^dt |omega_hat_k(s)|^2 ds along omega_hat(s) = e^{-k^2 s} w0 + F(s),
    // F the Duhamel response to the quadratic interpolant of the stage
    // nonlinearities (dense output of the step).
    std::vector<double> I(ns);
    std::unordered_map<long, StepIntegrals> cache;
    for (int iy = 0; iy < n_; ++iy) {
        const long jy = iy <= n_ / 2 ? iy : n_ - iy;
        for (int ix = 0; ix < m; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            const double kap = k2_at(sp, iy, ix);
            const double p0 = std::norm(w0[i]);
            I[i] = p0 * (kap == 0.0 ? dt : -std::expm1(-2.0 * kap * dt) / (2.0 * kap));
            if (!sp.dealias_keep(iy, ix) || kap == 0.0) continue;
            const long key = jy * jy + static_cast<long>(ix) * ix;
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, step_integrals(kap, dt)).first;
            const StepIntegrals& J = it->second;
            const cd mid = 0.5 * (B[i] + C[i]);
            const cd c[3] = {A[i], -3.0 * A[i] + 4.0 * mid - D[i], 2.0 * A[i] - 4.0 * mid + 2.0 * D[i]};
            cd cross = 0.0;
            double quad = 0.0;
            for (int p = 0; p < 3; ++p) {
                cross += c[p] * J.J[p];
                for (int q = 0; q < 3; ++q) quad += (c[p] * std::conj(c[q])).real() * J.K[p][q];
            }
            I[i] += 2.0 * (std::conj(w0[i]) * cross).real() + quad;
        }
    }
    const Quadratics qi = quadratics(sp, I);
    const Quadratics now = quadratics(sp, mode_power(w1));

    out.omega = sp.inverse_field(w1);
    out.time = s.time + dt;
    out.dissipation_accum = s.dissipation_accum + qi.dissipation;
    out.flux = s.flux;
    out.flux.a += qi.flux[0];
    out.flux.b += qi.flux[1];
    out.flux.d += qi.flux[2];
    out.flux.da = now.flux[0];
    out.flux.db = now.flux[1];
    out.flux.dd = now.flux[2];
    if (!std::isfinite(out.dissipation_accum) || !std::isfinite(out.flux.a) ||
        !std::isfinite(out.flux.d))
        throw BlowUpError(fmt::format("non-finite diagnostics at step {}", out.steps), out.steps);
    return out;
}

SeriesRow series_row(double t, const MomentumFlux& flux, double energy) {
    SeriesRow r;
    r.t = t;
    r.flux = flux;
    r.energy = energy;
    const HexInvariant inv = invariant_from_flux(flux);
    r.L = inv.L;
    if (inv.hexagon) {
        r.alpha = inv.hexagon->alpha;
        r.hex_speed = inv.hexagon->hex_speed;
        r.bound = inv.hexagon->speed_bound;
    }
    return r;
}

namespace {

Snapshot make_snapshot(const FlowState& s) {
    Snapshot snap;
    snap.time = s.time;
    snap.step = s.steps;
    snap.omega = std::make_shared<const GridScalarField>(s.omega);
    snap.flux = s.flux;
    snap.energy = s.flux.da + s.flux.dd;
    snap.dissipation = s.dissipation_accum;
    return snap;
}

}  // namespace

Trajectory run(const FlowState& start, const RunOptions& opt) {
    if (!(opt.final_time > 0.0)) throw DomainError("final time must be positive");
    if (!(opt.snapshot_every > 0.0)) throw DomainError("snapshot cadence must be positive");
    const Solver solver(start.omega.n, start.omega.box);
    Trajectory traj;
    traj.initial_energy = opt.initial_energy ? *opt.initial_energy : start.flux.da + start.flux.dd;

    if (!opt.checkpoint_dir.empty()) std::filesystem::create_directories(opt.checkpoint_dir);
    auto record_snapshot = [&](const FlowState& s, long index) {
        traj.snapshots.push_back(make_snapshot(s));
        if (!opt.checkpoint_dir.empty()) {
            const std::string path =
                (std::filesystem::path(opt.checkpoint_dir) / fmt::format("ckpt_{:05d}.bin", index)).string();
            write_checkpoint(s, path);
            traj.checkpoints.push_back(path);
        }
    };

    FlowState s = start;
    long index = std::lround(s.time / opt.snapshot_every);
    if (std::fabs(index * opt.snapshot_every - s.time) > 1e-12 * std::max(1.0, s.time))
        index = static_cast<long>(std::floor(s.time / opt.snapshot_every));
    else
        record_snapshot(s, index);
    traj.series.push_back(series_row(s.time, s.flux, s.flux.da + s.flux.dd));

    const double tol = 1e-12 * std::max(1.0, opt.final_time);
    while (s.time < opt.final_time - tol) {
        const double t_next = std::min((index + 1) * opt.snapshot_every, opt.final_time);
        double dt = opt.dt_policy == RunOptions::DtPolicy::Fixed
                        ? opt.dt
                        : std::min(solver.suggest_dt(s, opt.cfl_fraction), opt.dt_max);
        bool lands = false;
        if (s.time + dt >= t_next - tol) {
            dt = t_next - s.time;
            lands = true;
        }
        s = solver.step(s, dt);
        if (lands) s.time = t_next;
        traj.series.push_back(series_row(s.time, s.flux, s.flux.da + s.flux.dd));
        if (lands) {
            ++index;
            record_snapshot(s, index);
        }
    }
    return traj;
}

}  // namespace hexns
