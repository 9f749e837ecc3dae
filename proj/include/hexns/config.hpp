#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexns/farfield.hpp"
#include "hexns/initdata.hpp"
#include "hexns/solver.hpp"

namespace hexns {

// Document layout (JSON, every key optional):
//   grid:   { n, box }
//   time:   { dt_policy: "fixed" | "cfl_fraction", dt, cfl_fraction, dt_max, final_time, snapshot_every }
//   init:   { class, seed, count, support_radius, bumps: [{cx, cy, r, amp}] }
//   probe:  { radii, m, components, times, support_threshold }
//   output: { dir, checkpoints }
// probe.radii are multiples of the datum support radius.
struct SimConfig {
    int n = 256;
    double box = 16.0;

    RunOptions::DtPolicy dt_policy = RunOptions::DtPolicy::CflFraction;
    double dt = 1e-3;
    double cfl_fraction = 0.5;
    double dt_max = 1e-2;
    double final_time = 1.0;
    double snapshot_every = 0.1;

    SymmetryClass init_class = SymmetryClass::Generic;
    std::uint64_t seed = 42;
    int bump_count = 3;
    double support_radius = 0.0;  // 0: box / 16
    std::vector<BumpSpec> bumps;  // empty: seeded random family

    std::vector<double> probe_radii;
    int probe_m = 512;
    std::vector<Component> probe_components{Component::U1, Component::U2, Component::Speed};
    std::vector<double> probe_times;
    double probe_support_threshold = 1e-8;  // spectral tails sit near 1e-12

    std::string output_dir = "out";
    bool checkpoints = false;

    // Radius of the disk holding the datum.
    double datum_support() const;
    RunOptions run_options() const;
};

// Strict parse: unknown keys, wrong types and range violations throw
// ConfigError naming the key path.
SimConfig parse_config(const std::string& text);
SimConfig parse_config_file(const std::string& path);

// Full echo with defaults filled in; parse_config(dump(echo)) == config.
nlohmann::ordered_json config_to_json(const SimConfig& c);

}  // namespace hexns
