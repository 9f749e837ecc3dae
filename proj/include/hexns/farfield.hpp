#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "hexns/asymptotics.hpp"
#include "hexns/grid.hpp"
#include "hexns/types.hpp"

namespace hexns {

enum class Component { U1, U2, Speed };

std::string to_string(Component c);
Component component_from_string(const std::string& s);

// Free-space velocity of a numerically compact vorticity snapshot by the
// Biot-Savart law, u(x) = (1/2pi) sum (x-y)^perp / |x-y|^2 omega(y) h^2.
// The sum runs over the effective support; sub-threshold values outside it
// are dropped and their absolute mass is kept for reporting.
class BiotSavart {
public:
    explicit BiotSavart(const GridScalarField& omega, double support_rel = 1e-13);

    // Largest |y| where |omega| > support_rel * max|omega|.
    double support_radius() const { return support_; }
    // Probes must satisfy |x| > min_probe_radius().
    double min_probe_radius() const { return 1.5 * support_; }
    // Roundoff scale of one evaluation at radius R: eps * sum|omega| h^2 / (2 pi R).
    double noise_level(double R) const;

    // Sum of |omega| h^2 over grid points outside the effective support.
    double dropped_mass() const { return dropped_mass_; }

    Vec2 operator()(Point2 x) const;

private:
    std::vector<double> y1_, y2_, w_;
    double support_ = 0.0;
    double abs_mass_ = 0.0;
    double dropped_mass_ = 0.0;
};

Vec2 biot_savart_point(const GridScalarField& omega, Point2 x);

struct FarFieldProfile {
    double R = 0.0;
    double t = 0.0;
    Component component = Component::U2;
    std::vector<double> theta;
    std::vector<double> values;  // R^3 times the component at R (cos, sin)
    double noise_floor = 0.0;    // R^3-scaled roundoff level of the values
};

// Profiles of u1, u2 and speed from one set of evaluations.
struct VelocityProfiles {
    FarFieldProfile u1, u2, speed;
};

VelocityProfiles velocity_profiles(const BiotSavart& bs, double t, double R, int m);
FarFieldProfile angular_profile(const GridScalarField& omega, double t, double R, int m, Component c);

struct SinusoidFit {
    double amplitude = 0.0;      // A >= 0 in A sin(3 theta + phase)
    double phase = 0.0;          // in [0, 2 pi)
    double residual_rms = 0.0;
    std::vector<double> minima;  // angles in [0, 2 pi), increasing
    std::array<double, 7> harmonics{};  // |mean| and amplitudes of harmonics 1..6
    bool conclusive = false;     // amplitude above the noise floor
    bool hexagon_detected = false;
};

SinusoidFit fit_sinusoid(const FarFieldProfile& profile);

struct ComparisonRecord {
    Component component = Component::U2;
    double amplitude = 0.0;
    double L = 0.0;
    double amplitude_error = 0.0;  // |A - L| / L
    double expected_phase = 0.0;
    double phase_error = 0.0;         // circle distance modulo pi (same hexagon)
    double signed_phase_error = 0.0;  // circle distance modulo 2 pi (also checks the sign)
    std::vector<double> vertex_mismatch;  // per predicted zero, distance to nearest minimum
    double max_vertex_mismatch = 0.0;
};

// The far field is -grad H, so the fitted u2 phase is compared with
// alpha + pi and its minima with the vertical vertices; u1 uses
// alpha + 3 pi/2 and the horizontal vertices.  phase_error ignores the
// overall sign, signed_phase_error does not.
ComparisonRecord compare_to_prediction(const SinusoidFit& fit, const HexInvariant& inv, Component c);

// Mean circular offset of each minimum of a to the nearest minimum of b.
double minima_offset(const SinusoidFit& a, const SinusoidFit& b);

struct IsotropyRecord {
    double cv = 0.0;    // std / mean of the speed profile
    double mean = 0.0;
    double min_value = 0.0;
    double L = 0.0;
    double mean_error = 0.0;  // |mean - L| / L, zero when L == 0
    bool nowhere_at_rest = false;
};

IsotropyRecord isotropy_check(const FarFieldProfile& speed, const HexInvariant& inv);

// Limit of f(R) = f_inf + c / R from two radii.
double richardson_limit(double R1, double f1, double R2, double f2);

struct RasterSpec {
    int pixels = 256;
    double half_width = 4.0;  // window [-w, w]^2
    Component component = Component::U1;
    bool scale_r3 = true;     // multiply by |x|^3
};

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // row-major, row 0 at the top (largest x2)
    double min = 0.0;
    double max = 0.0;

    Point2 pixel_center(int col, int row, double half_width) const;
};

// Closed-form density of the chosen component of grad H.
Raster render_closed_form(const MomentumFlux& flux, const RasterSpec& spec);
// Trigonometric interpolant of the periodic velocity of omega.
Raster render_simulated(const GridScalarField& omega, const RasterSpec& spec);

// 8-bit binary PGM with a linear map of [min, max] to [0, 255], plus a
// sidecar "<path>.range" holding min and max.
void write_pgm(const Raster& raster, const std::string& path);

}  // namespace hexns
