#include "hexns/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "hexns/error.hpp"

namespace hexns {

namespace {

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

void require_off_origin(Point2 x) {
    if (!std::isfinite(x.x1) || !std::isfinite(x.x2)) throw DomainError("point must be finite");
    if (x.norm() < kOriginTolerance) throw SingularityError("kernel evaluated at the origin");
}

double comp(Point2 x, int i) { return i == 0 ? x.x1 : x.x2; }

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// S_{jhk} = delta_jh x_k + delta_jk x_h + delta_hk x_j
double sym_s(Point2 x, int j, int h, int k) {
    return delta(j, h) * comp(x, k) + delta(j, k) * comp(x, h) + delta(h, k) * comp(x, j);
}

double cube(Point2 x, int j, int h, int k) { return comp(x, j) * comp(x, h) * comp(x, k); }

// Tensor (1/pi) [ S p / r^4 - 2 x x x q / r^6 ] for scalar weights p, q.
// Evaluated once per multiset of indices so the result is exactly symmetric.
Tensor3 s_minus_cube(Point2 x, double p_over_r4, double q_over_r6) {
    double by_count[4];
    for (int m = 0; m < 4; ++m) {
        const int j = m >= 3 ? 1 : 0, h = m >= 2 ? 1 : 0, k = m >= 1 ? 1 : 0;
        by_count[m] = (sym_s(x, j, h, k) * p_over_r4 - 2.0 * cube(x, j, h, k) * q_over_r6) / kPi;
    }
    Tensor3 out;
    for (int j = 0; j < 2; ++j)
        for (int h = 0; h < 2; ++h)
            for (int k = 0; k < 2; ++k) out(j, h, k) = by_count[j + h + k];
    return out;
}

// sum_{n>=0} rho^n / (n + m)!
double gamma_series(double rho, int m) {
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    double term = 1.0 / fact;
    double sum = term;
    for (int n = 1; n < 200; ++n) {
        term *= rho / (n + m);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

double heat_kernel(Point2 x, double t) {
    require_time(t);
    return std::exp(-x.norm2() / (4.0 * t)) / (4.0 * kPi * t);
}

Tensor3 fundamental_tensor(Point2 x) {
    require_off_origin(x);
    const double r2 = x.norm2();
    return s_minus_cube(x, 1.0 / (r2 * r2), 2.0 / (r2 * r2 * r2));
}

Tensor3 oseen_kernel_local(Point2 x, double t) {
    require_time(t);
    require_off_origin(x);
    const double g = heat_kernel(x, t);
    Tensor3 out;
    for (int j = 0; j < 2; ++j)
        for (int h = 0; h < 2; ++h) out(j, h, j) = -comp(x, h) / (2.0 * t) * g;
    return out;
}

Tensor3 oseen_kernel_nonlocal(Point2 x, double t) {
    require_time(t);
    require_off_origin(x);
    const double r2 = x.norm2();
    const double rho = r2 / (4.0 * t);
    double p, q;  // gamma(2,rho)/r^4 and gamma(3,rho)/r^6
    if (rho < 1.0) {
        const double e = std::exp(-rho);
        p = e * gamma_series(rho, 2) / (16.0 * t * t);
        q = 2.0 * e * gamma_series(rho, 3) / (64.0 * t * t * t);
    } else {
        const double e = std::exp(-rho);
        p = (1.0 - e * (1.0 + rho)) / (r2 * r2);
        q = (2.0 - e * (rho * rho + 2.0 * rho + 2.0)) / (r2 * r2 * r2);
    }
    return s_minus_cube(x, p, q);
}

Tensor3 oseen_kernel(Point2 x, double t) {
    return oseen_kernel_local(x, t) + oseen_kernel_nonlocal(x, t);
}

KernelQuadrature oseen_kernel_nonlocal_quadrature(Point2 x, double t, double tol) {
    require_time(t);
    require_off_origin(x);
    boost::math::quadrature::exp_sinh<double> integrator;
    KernelQuadrature out;
    for (int j = 0; j < 2; ++j)
        for (int h = 0; h < 2; ++h)
            for (int k = 0; k < 2; ++k) {
                const double s3 = sym_s(x, j, h, k);
                const double c3 = cube(x, j, h, k);
                auto f = [&](double s) {
                    const double g = std::exp(-x.norm2() / (4.0 * s)) / (4.0 * kPi * s);
                    return (s3 / (4.0 * s * s) - c3 / (8.0 * s * s * s)) * g;
                };
                double err = 0.0, l1 = 0.0;
                const double v = integrator.integrate(f, t, std::numeric_limits<double>::infinity(),
                                                      1e-15,
                                                      &err, &l1);
                if (!(err <= tol * std::max(1.0, l1)))
                    throw AccuracyError("time quadrature of F2 missed tolerance", err, tol);
                out.value(j, h, k) = v;
                out.error_estimate = std::max(out.error_estimate, err);
            }
    return out;
}

Tensor3 kernel_remainder(Point2 x, double t) {
    require_time(t);
    require_off_origin(x);
    const double r2 = x.norm2();
    const double r = std::sqrt(r2);
    const double rho = r2 / (4.0 * t);
    const double e = std::exp(-rho);
    // F2 - frakF = (1/pi) e^{-rho} [ -S (1+rho)/r^4 + 2 xxx (rho^2+2rho+2)/r^6 ]
    Tensor3 out = s_minus_cube(x, -e * (1.0 + rho) / (r2 * r2),
                               -e * (rho * rho + 2.0 * rho + 2.0) / (r2 * r2 * r2));
    out += oseen_kernel_local(x, t);
    out *= r2 * r;
    return out;
}

KernelSample sample_kernels(Point2 x, double t) {
    KernelSample s;
    s.x = x;
    s.t = t;
    s.g = heat_kernel(x, t);
    s.frak_f = fundamental_tensor(x);
    s.f = oseen_kernel(x, t);
    s.psi = kernel_remainder(x, t);
    return s;
}

namespace {

using GL = boost::math::quadrature::gauss<double, 20>;

// Polar rule on the sector r in [0,R], theta in [phi0, phi0 + span).
// Full circle: trapezoid in theta.  Half circle: Gauss-Legendre panels.
Tensor3 polar_rule(double R, double t, double phi0, bool full, int panels, int angular) {
    Tensor3 total;
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    auto radial_ring = [&](double r, double w_r) {
        Tensor3 ring;
        if (full) {
            const double dth = 2.0 * kPi / angular;
            for (int i = 0; i < angular; ++i) {
                const double th = phi0 + i * dth;
                ring += dth * oseen_kernel(Point2{r * std::cos(th), r * std::sin(th)}, t);
            }
        } else {
            const double pw = kPi / angular;
            for (int p = 0; p < angular; ++p) {
                const double a = phi0 + p * pw, mid = a + 0.5 * pw;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    for (int sgn : {-1, 1}) {
                        if (sgn < 0 && xs[i] == 0.0) continue;
                        const double th = mid + sgn * 0.5 * pw * xs[i];
                        ring += (0.5 * pw * ws[i]) *
                                oseen_kernel(Point2{r * std::cos(th), r * std::sin(th)}, t);
                    }
                }
            }
        }
        total += (w_r * r) * ring;
    };
    const double pr = R / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * pr;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (int sgn : {-1, 1}) {
                if (sgn < 0 && xs[i] == 0.0) continue;
                radial_ring(mid + sgn * 0.5 * pr * xs[i], 0.5 * pr * ws[i]);
            }
    }
    return total;
}

MomentResult refine(double R, double t, double phi0, bool full, const BallRule& rule) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("ball radius must be positive");
    require_time(t);
    int panels = std::max(1, rule.radial_nodes / 8);
    int angular = full ? rule.angular_nodes : std::max(1, rule.angular_nodes / 16);
    Tensor3 prev = polar_rule(R, t, phi0, full, panels, angular);
    double diff = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= rule.max_levels; ++level) {
        panels *= 2;
        angular *= 2;
        Tensor3 next = polar_rule(R, t, phi0, full, panels, angular);
        diff = (next - prev).max_abs();
        prev = next;
        if (diff < rule.tol) {
            MomentResult out;
            out.value = prev;
            out.level_difference = diff;
            out.radial_nodes = panels * 20;
            out.angular_nodes = full ? angular : angular * 20;
            return out;
        }
    }
    throw AccuracyError("ball quadrature did not converge", diff, rule.tol);
}

}  // namespace

MomentResult kernel_moment(double R, double t, const BallRule& rule) {
    return refine(R, t, 0.0, true, rule);
}

MomentResult half_ball_moment(double R, double t, double phi, const BallRule& rule) {
    return refine(R, t, phi, false, rule);
}

double remainder_magnitude(double xi, int directions) {
    double m = 0.0;
    for (int i = 0; i < directions; ++i) {
        const double th = 2.0 * kPi * (i + 0.5) / directions;
        m = std::max(m, kernel_remainder(Point2{xi * std::cos(th), xi * std::sin(th)}, 1.0).frobenius());
    }
    return m;
}

EnvelopeFit fit_remainder_envelope(double xi_min, double xi_max, int samples) {
    if (!(xi_min > 0.0) || !(xi_max > xi_min) || samples < 3)
        throw DomainError("envelope fit needs 0 < xi_min < xi_max and at least 3 samples");
    EnvelopeFit fit;
    const double q = std::log(xi_max / xi_min) / (samples - 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < samples; ++i) {
        const double xi = xi_min * std::exp(q * i);
        const double m = remainder_magnitude(xi);
        fit.xi.push_back(xi);
        fit.magnitude.push_back(m);
        const double X = xi * xi, Y = std::log(m);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    const double n = samples;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.c = -slope;
    for (int i = 0; i < samples; ++i)
        fit.C = std::max(fit.C, fit.magnitude[i] * std::exp(fit.c * fit.xi[i] * fit.xi[i]));
    return fit;
}

}  // namespace hexns
