#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "hexns/grid.hpp"
#include "hexns/types.hpp"

namespace hexns {

// Time-integrated momentum flux and its current time derivative:
// a = int_0^t int u1^2, b = int_0^t int 2 u1 u2, d = int_0^t int u2^2.
struct MomentumFlux {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double da = 0.0;
    double db = 0.0;
    double dd = 0.0;
};

// (int u1^2, int 2 u1 u2, int u2^2) by grid quadrature.
std::array<double, 3> flux_integrals(const GridVectorField& u);

// Adds weight * flux_integrals(u) and stores the integrals as da, db, dd.
void accumulate_flux(MomentumFlux& flux, const GridVectorField& u, double weight);

struct HexGeometry {
    double alpha = 0.0;                    // in [0, 2 pi)
    std::array<double, 6> vertex_angles{};  // zeros of sin(3 theta + alpha), in (-pi, pi]
    std::array<Vec2, 6> vertices{};
    std::array<double, 6> horizontal_angles{};  // zeros of cos(3 theta + alpha)
    std::complex<double> sigma_vertical;   // e^{-2 i alpha}
    std::complex<double> sigma_horizontal; // -sigma_vertical
    double hex_speed = 0.0;                // |d alpha / dt|
    double vertex_speed = 0.0;             // |d alpha / dt| / 3
    double speed_bound = 0.0;              // sqrt(2) (da + dd) / (pi L)
};

struct HexInvariant {
    std::complex<double> z;  // (a - d) + i b
    double L = 0.0;          // |z| / pi
    std::optional<HexGeometry> hexagon;  // empty when z == 0

    bool defined() const { return hexagon.has_value(); }
};

HexInvariant invariant_from_flux(const MomentumFlux& flux);

// Angle alpha with cos = (d-a)/|z|, sin = b/|z|; throws when z == 0.
double flux_angle(const MomentumFlux& flux);

// Printed closed form of grad H for the flux matrix.
Vec2 grad_H(Point2 x, const MomentumFlux& flux);

// grad_H on the unit circle in trigonometric form.
Vec2 profile_P(double theta, const MomentumFlux& flux);

struct HexagonSpeed {
    double hex_speed = 0.0;
    double bound = 0.0;
};
HexagonSpeed hexagon_speed(const MomentumFlux& flux);

// (1/pi) sqrt((int u1^2 - u2^2)^2 + (int 2 u1 u2)^2)
double short_time_slope(const GridVectorField& u0);

struct FluxSample {
    double t = 0.0;
    MomentumFlux flux;
    double energy = 0.0;  // ||u(t)||^2 = da + dd
};

struct LargeTimeOptions {
    double decay_factor = 10.0;  // required energy(0) / energy(t_end)
    double fit_fraction = 0.5;   // late portion of the series used in the fit
};

struct LargeTimeResult {
    bool conclusive = false;
    HexInvariant invariant;
    double decay_exponent = 0.0;  // energy ~ C t^{-p}, p reported
    double decay_constant = 0.0;
    double tail_bound = 0.0;      // estimate of int_t^inf ||u||^2 ds at the last sample
};

LargeTimeResult large_time_extrapolate(const std::vector<FluxSample>& series,
                                       const LargeTimeOptions& opt = {});

// int_t^inf C s^{-p} ds, infinite when p <= 1.
double tail_bound(double t, double C, double p);

}  // namespace hexns
