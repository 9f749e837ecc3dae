#pragma once

#include <string>
#include <vector>

#include "hexns/config.hpp"
#include "hexns/initdata.hpp"
#include "hexns/report.hpp"
#include "hexns/solver.hpp"

namespace hexns {

// Thresholds applied to far-field probes.
struct ProbeCriteria {
    double max_cv = 0.10;
    double max_mean_error = 0.15;      // Richardson limit of R^3 |u| against L
    double max_spacing_error = 0.05;   // minima spacing against pi/3
    double max_phase_error = 0.1;
};

std::vector<BumpSpec> config_bumps(const SimConfig& c);
Datum build_datum(const SimConfig& c);

// Probes one snapshot on circles of radius multiplier * support_radius.
std::vector<ProbeRecord> probe_snapshot(const GridScalarField& omega, const MomentumFlux& flux, double t,
                                        const std::vector<double>& multipliers, double support_radius, int m,
                                        const std::vector<Component>& components, double support_threshold);

// Largest |gap - pi/3| between consecutive minima (cyclic); infinity
// unless there are exactly six.
double minima_spacing_error(const std::vector<double>& minima);

// Verdicts for the records of one probe time.  `first` is the index of
// records.front() in the report's probe list; `summary` receives the
// cross-radius quantities and `summary_pointer` is its JSON pointer.
std::vector<Verdict> probe_verdicts(const std::vector<ProbeRecord>& records, std::size_t first,
                                    const ProbeCriteria& crit, ojson& summary, const std::string& summary_pointer);

struct SimulationOutput {
    Datum datum;
    Trajectory trajectory;
    RunReport report;
};

// Builds the datum, runs to the final time, probes the requested times and
// assembles the report.  Checkpoints go to <checkpoint_dir> when the
// config asks for them.
SimulationOutput simulate(const SimConfig& c, const std::string& checkpoint_dir = "");

}  // namespace hexns
