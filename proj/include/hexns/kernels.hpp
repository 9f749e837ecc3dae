#pragma once

#include <vector>

#include "hexns/types.hpp"

namespace hexns {

// Points closer to the origin than this are rejected by F and the
// fundamental tensor.
inline constexpr double kOriginTolerance = 1e-12;

// g_t(x) = (4 pi t)^{-1} exp(-|x|^2 / 4t)
double heat_kernel(Point2 x, double t);

// Third derivatives of E_2(x) = -(1/4pi) log |x|^2.  Fully symmetric,
// homogeneous of degree -3.
Tensor3 fundamental_tensor(Point2 x);

// Split F = F1 + F2 with F1_{j;h,k} = d_h g_t delta_{jk} and
// F2 = int_t^inf d_j d_h d_k g_s ds.
Tensor3 oseen_kernel_local(Point2 x, double t);
Tensor3 oseen_kernel_nonlocal(Point2 x, double t);

// F = F1 + F2, closed form in rho = |x|^2 / 4t.
Tensor3 oseen_kernel(Point2 x, double t);

// F2 by adaptive quadrature of the time integral.  Slower; used as a
// second route for checking the closed form.
struct KernelQuadrature {
    Tensor3 value;
    double error_estimate = 0.0;
};
KernelQuadrature oseen_kernel_nonlocal_quadrature(Point2 x, double t, double tol = 1e-12);

// |x|^3 (F(x,t) - frakF(x)), evaluated without subtracting the two.
Tensor3 kernel_remainder(Point2 x, double t);

struct KernelSample {
    Point2 x;
    double t = 0.0;
    double g = 0.0;
    Tensor3 frak_f;
    Tensor3 f;
    Tensor3 psi;
};
KernelSample sample_kernels(Point2 x, double t);

struct BallRule {
    double tol = 1e-10;
    int radial_nodes = 8;
    int angular_nodes = 16;
    int max_levels = 8;
};

struct MomentResult {
    Tensor3 value;
    double level_difference = 0.0;
    int radial_nodes = 0;
    int angular_nodes = 0;
};

// int_{|y| <= R} F(y,t) dy with a polar Gauss-Legendre x trapezoid rule,
// doubled until successive levels agree to rule.tol.
MomentResult kernel_moment(double R, double t, const BallRule& rule = {});

// Same integral restricted to angles [phi, phi + pi).
MomentResult half_ball_moment(double R, double t, double phi, const BallRule& rule = {});

// Gaussian envelope |Psi(xi)| <= C exp(-c xi^2) fitted on samples
// (xi, max over directions of |Psi|).
struct EnvelopeFit {
    double C = 0.0;
    double c = 0.0;
    std::vector<double> xi;
    std::vector<double> magnitude;
};
double remainder_magnitude(double xi, int directions = 16);
EnvelopeFit fit_remainder_envelope(double xi_min, double xi_max, int samples);

}  // namespace hexns
