#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hexns/asymptotics.hpp"
#include "hexns/grid.hpp"

namespace hexns {

struct FlowState {
    GridScalarField omega;
    double time = 0.0;
    double dissipation_accum = 0.0;  // 2 int_0^t ||grad u||^2
    MomentumFlux flux;
    long steps = 0;
};

// u = grad^perp Delta^{-1} omega, grad^perp = (-d_2, d_1).
GridVectorField velocity_from_vorticity(const GridScalarField& omega);

double energy(const GridVectorField& u);           // int |u|^2
double enstrophy(const GridScalarField& omega);    // int omega^2
double energy_of(const GridScalarField& omega);    // energy(velocity_from_vorticity(omega))
double energy_equality_residual(const FlowState& state, double initial_energy);

// Fresh state at t = 0 with da, db, dd populated.
FlowState initial_state(const GridScalarField& omega);

// Exponential time differencing RK4 (Cox-Matthews) on the vorticity
// equation with unit viscosity; diffusion is integrated exactly.
class Solver {
public:
    Solver(int n, double box);

    // Largest dt for which advection stays inside the RK4 stability region.
    double stability_limit(const FlowState& s) const;
    double suggest_dt(const FlowState& s, double fraction = 0.5) const;

    FlowState step(const FlowState& s, double dt) const;

    int n() const { return n_; }
    double box() const { return box_; }

private:
    int n_;
    double box_;
};

struct Snapshot {
    double time = 0.0;
    long step = 0;
    std::shared_ptr<const GridScalarField> omega;
    MomentumFlux flux;
    double energy = 0.0;
    double dissipation = 0.0;
};

struct SeriesRow {
    double t = 0.0;
    MomentumFlux flux;
    double L = 0.0;
    std::optional<double> alpha;
    std::optional<double> hex_speed;
    std::optional<double> bound;
    double energy = 0.0;
};

struct Trajectory {
    double initial_energy = 0.0;
    std::vector<Snapshot> snapshots;
    std::vector<SeriesRow> series;
    std::vector<std::string> checkpoints;
};

struct RunOptions {
    enum class DtPolicy { Fixed, CflFraction };
    DtPolicy dt_policy = DtPolicy::CflFraction;
    double dt = 1e-3;            // fixed policy
    double cfl_fraction = 0.5;   // cfl policy
    double dt_max = 1e-2;        // cap for the cfl policy
    double final_time = 1.0;
    double snapshot_every = 0.1;
    std::string checkpoint_dir;  // empty: no checkpoints
    // Energy at t = 0 of the original run, needed for residuals after a restart.
    std::optional<double> initial_energy;
};

SeriesRow series_row(double t, const MomentumFlux& flux, double energy);

Trajectory run(const FlowState& start, const RunOptions& opt);

}  // namespace hexns
