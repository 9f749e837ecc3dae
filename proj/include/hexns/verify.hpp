#pragma once

#include <string>
#include <vector>

#include "hexns/grid.hpp"
#include "hexns/solver.hpp"
#include "hexns/types.hpp"

namespace hexns {

// ---------------------------------------------------------------------------
// Duhamel term  L(w)(x,t) = int_0^t int F(x-y, t-s) : w(y,s) dy ds

enum class SpatialProfile { Bump, Gaussian };

std::string to_string(SpatialProfile p);
SpatialProfile spatial_profile_from_string(const std::string& s);

// Separable field w(y,s) = matrix * (s/time_scale)^{-exponent} * f(|y|/width).
// Bump: f(r) = e * exp(-1/(1-r^2)) on r < 1.  Gaussian: f(r) = exp(-r^2).
struct SyntheticTensorField {
    SpatialProfile profile = SpatialProfile::Bump;
    Sym2 matrix{1.0, 0.0, 0.0};
    double width = 1.0;
    double exponent = 0.0;  // 0 <= a < 1
    double time_scale = 1.0;

    void validate() const;
    double spatial(Point2 y) const;
    double temporal(double s) const;
    // Bump: width.  Gaussian: radius where f drops to 1e-13.
    double support_radius() const;
    // int f dy
    double spatial_mass() const;
    // int_0^t int w dy ds
    Sym2 integral(double t) const;
};

struct DuhamelValue {
    Vec2 value{};
    double error_estimate = 0.0;
};

// Polar Gauss-Legendre x trapezoid rule in space, refined until successive
// levels agree, and adaptive Gauss-Kronrod in the time variable
// v = (s/t)^{1-a}.  Throws AccuracyError when tol cannot be met.
DuhamelValue duhamel_eval(const SyntheticTensorField& w, Point2 x, double t, double tol = 1e-10);
// The same integral restricted to s in [s_lo, s_hi].
DuhamelValue duhamel_eval_window(const SyntheticTensorField& w, Point2 x, double t, double s_lo, double s_hi,
                                 double tol = 1e-10);

struct DuhamelRow {
    double R = 0.0;
    double residual = 0.0;        // max over directions of |x|^3 |L(w) - frakF : int w|
    double error_estimate = 0.0;  // |x|^3 times the quadrature estimate
};

struct DuhamelTable {
    double t = 0.0;
    double scale = 0.0;  // max over directions of |x|^3 |frakF(x) : int w|
    std::vector<DuhamelRow> rows;
    bool strictly_decreasing = false;
    double final_ratio = 0.0;  // last residual / scale (0 when scale is 0)
};

DuhamelTable duhamel_asymptotics_check(const SyntheticTensorField& w, double t, const std::vector<double>& radii,
                                       int directions = 16, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Heat semigroup far field

enum class HeatCase { I, II, III };

// Closed-form initial fields.
//   Gaussian:        (1, 1/2) exp(-|x|^2 / width^2)                 case i
//   GradientDecay:   (1, 0) (1 + (1 + |x|^2/width^2)^{-5/4})         case ii
//   LaplacianDecay:  x / (width^2 + |x|^2)                           case iii
//   CubicTail:       (1, 0) cos(k x1) (1 + |x|^2/width^2)^{-3/2}     boundary of case i
enum class HeatField { Gaussian, GradientDecay, LaplacianDecay, CubicTail };

std::string to_string(HeatCase c);
HeatCase heat_case_from_string(const std::string& s);
std::string to_string(HeatField f);
HeatField heat_field_from_string(const std::string& s);

struct HeatGenerator {
    HeatField field = HeatField::Gaussian;
    double width = 1.0;
    double wavenumber = 2.0;  // CubicTail only

    Vec2 operator()(Point2 x) const;
    // Whether the field satisfies the hypothesis of case c; CubicTail is
    // accepted for case i as a boundary probe.
    bool admits(HeatCase c) const;
    bool boundary() const { return field == HeatField::CubicTail; }
};

struct HeatValue {
    Vec2 value{};
    double error_estimate = 0.0;
};

// e^{t Delta} u0 (x) = pi^{-1} int exp(-|eta|^2) u0(x + 2 sqrt(t) eta) d eta by
// tensor Gauss-Kronrod panels on [-10, 10]^2.
HeatValue heat_eval(const HeatGenerator& u0, Point2 x, double t, double tol = 1e-10);

struct HeatRow {
    double R = 0.0;
    double value = 0.0;  // sup over directions and sampled t of |x|^3 |e^{t Delta} u0 - u0|
};

struct HeatTable {
    HeatCase heat_case = HeatCase::I;
    HeatField field = HeatField::Gaussian;
    double T = 0.0;
    std::vector<HeatRow> rows;
    bool finite = false;
    bool strictly_decreasing = false;
    bool non_vanishing = false;  // min >= 0.1 max over the column
    bool pass = false;           // decreasing for strict cases, bounded and non-vanishing at the boundary
};

HeatTable heat_tail_check(const HeatGenerator& u0, HeatCase c, double T, const std::vector<double>& radii,
                          int directions = 16, int time_samples = 8);

struct HeatTScaling {
    std::vector<double> T;
    std::vector<double> bound;   // max over the column at each T
    std::vector<double> slopes;  // log2 of successive ratios
    double max_slope = 0.0;
    bool pass = false;           // max_slope <= 3
};

// Doubling T from T0 `doublings` times.
HeatTScaling heat_T_scaling(const HeatGenerator& u0, HeatCase c, double T0, int doublings,
                            const std::vector<double>& radii);

// ---------------------------------------------------------------------------
// Weighted norms and L2 decay

struct WeightedNorms {
    double t = 0.0;
    double sup_phi_u = 0.0;     // phi(x) = (1+|x|) log(e+|x|)^{1/2}
    double sup_psi_grad = 0.0;  // psi(x) = (1+|x|)^2 log(e+|x|)^{1/2}
};

WeightedNorms weighted_norm_monitor(const GridVectorField& u, double t);

// sum over modes of |u_hat|^2 / |k|^2, normalised like int |u|^2
double hdot_minus1_norm2(const GridVectorField& u);

struct L2DecayRow {
    double t = 0.0;
    double energy = 0.0;       // ||u(t)||^2
    double heat_energy = 0.0;  // ||e^{t Delta} u0||^2
    double difference = 0.0;   // ||u(t) - e^{t Delta} u0||^2
    double heat_bound = 0.0;   // C / (1 + t)
};

struct L2DecayResult {
    std::vector<L2DecayRow> rows;
    double C = 0.0;  // ||u0||^2 + ||u0||^2_{H^-1} / (2e)
    bool energy_non_increasing = false;
    bool heat_bound_holds = false;
    double energy_exponent = 0.0;      // late-window log-log slope
    double difference_exponent = 0.0;  // late-window log-log slope
};

// The late window is the last `late_fraction` of the snapshots with t > 0.
L2DecayResult l2_decay_track(const Trajectory& traj, const GridVectorField& u0, double late_fraction = 0.5);

}  // namespace hexns
