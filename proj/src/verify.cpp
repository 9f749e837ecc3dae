#include "hexns/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "hexns/error.hpp"
#include "hexns/kernels.hpp"
#include "hexns/parallel.hpp"

namespace hexns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
double norm(Vec2 a) { return std::hypot(a[0], a[1]); }

// Gauss-Kronrod 15 point rule on [-1, 1], expanded to all nodes.  Gauss
// weights are zero on Kronrod-only nodes.
struct GKRule {
    std::vector<double> x, wk, wg;
};

const GKRule& gk15() {
    static const GKRule rule = [] {
        using K = boost::math::quadrature::gauss_kronrod<double, 15>;
        using G = boost::math::quadrature::gauss<double, 7>;
        const auto& a = K::abscissa();
        const auto& w = K::weights();
        const auto& g = G::weights();
        GKRule r;
        for (std::size_t i = 0; i < a.size(); ++i) {
            // even indices are the Gauss nodes (7 is odd, so the centre is one)
            const double gw = (i % 2 == 0) ? g[i / 2] : 0.0;
            r.x.push_back(a[i]);
            r.wk.push_back(w[i]);
            r.wg.push_back(gw);
            if (a[i] != 0.0) {
                r.x.push_back(-a[i]);
                r.wk.push_back(w[i]);
                r.wg.push_back(gw);
            }
        }
        return r;
    }();
    return rule;
}

struct TensorEstimate {
    Tensor3 value;
    double error = 0.0;
};

// Adaptive bisection with the 15 point Kronrod rule for Tensor3 integrands.
template <class F>
TensorEstimate adaptive_gk(const F& f, double a, double b, double tol, int depth) {
    const GKRule& r = gk15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Tensor3 k, g;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        const Tensor3 v = f(mid + half * r.x[i]);
        k += (half * r.wk[i]) * v;
        if (r.wg[i] != 0.0) g += (half * r.wg[i]) * v;
    }
    const double err = (k - g).frobenius();
    if (err <= tol || depth == 0) return {k, err};
    const TensorEstimate lo = adaptive_gk(f, a, mid, 0.5 * tol, depth - 1);
    const TensorEstimate hi = adaptive_gk(f, mid, b, 0.5 * tol, depth - 1);
    return {lo.value + hi.value, lo.error + hi.error};
}

double bump_shape(double r) {
    if (r >= 1.0) return 0.0;
    return kE * std::exp(-1.0 / (1.0 - r * r));
}

// int_0^1 bump_shape(r) r dr
double bump_radial_moment() {
    static const double m = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double r) { return bump_shape(r) * r; }, 0.0, 1.0, 15, 1e-15);
    return m;
}

// Spatial nodes y_i with weights W_i = quadrature weight * f(y_i).
struct SpatialRule {
    std::vector<Point2> y;
    std::vector<double> w;
};

SpatialRule spatial_rule(const SyntheticTensorField& f, int level) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    const double R = f.support_radius();
    const int panels = 1 << level;
    const int angular = 32 << level;
    const double pr = R / panels, dth = 2.0 * kPi / angular;
    SpatialRule rule;
    for (int p = 0; p < panels; ++p) {
        const double c = (p + 0.5) * pr;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (int sgn : {-1, 1}) {
                if (sgn < 0 && xs[i] == 0.0) continue;
                const double r = c + sgn * 0.5 * pr * xs[i];
                const double wr = 0.5 * pr * ws[i] * r * dth;
                for (int j = 0; j < angular; ++j) {
                    const Point2 y{r * std::cos(j * dth), r * std::sin(j * dth)};
                    const double v = f.spatial(y);
                    if (v == 0.0) continue;
                    rule.y.push_back(y);
                    rule.w.push_back(wr * v);
                }
            }
    }
    return rule;
}

// int F(x - y, tau) f(y) dy
Tensor3 spatial_integral(const SpatialRule& rule, Point2 x, double tau) {
    Tensor3 s;
    for (std::size_t i = 0; i < rule.y.size(); ++i) s += rule.w[i] * oseen_kernel(x - rule.y[i], tau);
    return s;
}

// Bound on |T : M| for |T| measured in the Frobenius norm.
double matrix_norm(const Sym2& m) { return std::sqrt(m.m11 * m.m11 + 2 * m.m12 * m.m12 + m.m22 * m.m22) * std::sqrt(2.0); }

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return !v.empty();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(SpatialProfile p) { return p == SpatialProfile::Bump ? "bump" : "gaussian"; }

SpatialProfile spatial_profile_from_string(const std::string& s) {
    if (s == "bump") return SpatialProfile::Bump;
    if (s == "gaussian") return SpatialProfile::Gaussian;
    throw DomainError("unknown spatial profile '" + s + "' (expected bump or gaussian)");
}

void SyntheticTensorField::validate() const {
    if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("synthetic field width must be positive");
    if (!(exponent >= 0.0 && exponent < 1.0)) throw DomainError("time exponent must lie in [0, 1)");
    if (!(time_scale > 0.0) || !std::isfinite(time_scale)) throw DomainError("time scale must be positive");
}

double SyntheticTensorField::spatial(Point2 y) const {
    const double r = y.norm() / width;
    return profile == SpatialProfile::Bump ? bump_shape(r) : std::exp(-r * r);
}

double SyntheticTensorField::temporal(double s) const {
    return exponent == 0.0 ? 1.0 : std::pow(s / time_scale, -exponent);
}

double SyntheticTensorField::support_radius() const {
    return profile == SpatialProfile::Bump ? width : width * std::sqrt(13.0 * std::log(10.0));
}

double SyntheticTensorField::spatial_mass() const {
    if (profile == SpatialProfile::Gaussian) return kPi * width * width;
    return 2.0 * kPi * width * width * bump_radial_moment();
}

Sym2 SyntheticTensorField::integral(double t) const {
    const double time = std::pow(time_scale, exponent) * std::pow(t, 1.0 - exponent) / (1.0 - exponent);
    const double s = time * spatial_mass();
    return {s * matrix.m11, s * matrix.m12, s * matrix.m22};
}

DuhamelValue duhamel_eval(const SyntheticTensorField& w, Point2 x, double t, double tol) {
    return duhamel_eval_window(w, x, t, 0.0, t, tol);
}

DuhamelValue duhamel_eval_window(const SyntheticTensorField& w, Point2 x, double t, double s_lo, double s_hi,
                                 double tol) {
    w.validate();
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive");
    if (!(0.0 <= s_lo && s_lo < s_hi && s_hi <= t)) throw DomainError("time window must satisfy 0 <= s_lo < s_hi <= t");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (!(x.norm() >= 2.0 * w.support_radius()))
        throw DomainError(fmt::format("probe |x| = {:.6g} is inside twice the support radius {:.6g}", x.norm(),
                                      w.support_radius()));
    DuhamelValue out;
    const double mnorm = matrix_norm(w.matrix);
    if (mnorm == 0.0) return out;
    // Quadrature acts on the tensor integral, so rules depend on w.matrix
    // only through this tolerance; matrices with norm <= 1 share rules.
    const double ttol = tol / std::max(1.0, mnorm);

    // s = s_lo + (s_hi - s_lo) v^p; p = 1/(1-a) absorbs s^{-a} when s_lo = 0
    const double a = w.exponent;
    const bool singular = s_lo == 0.0 && a > 0.0;
    const double p = singular ? 1.0 / (1.0 - a) : 1.0;
    const double len = s_hi - s_lo;
    auto weight = [&](double v) {
        if (singular) return std::pow(w.time_scale, a) * std::pow(len, 1.0 - a) / (1.0 - a);
        return len * w.temporal(s_lo + len * v);
    };
    double wmax = 0.0;
    for (double v : {0.0, 0.5, 1.0}) wmax = std::max(wmax, weight(v));

    // spatial level: successive levels agree at representative times
    int level = 0;
    double spatial_err = 0.0;
    std::vector<double> taus;
    for (double f : {0.0, 0.25, 0.5, 0.75, 0.9375}) taus.push_back(t - s_lo - f * len);
    for (;; ++level) {
        if (level > 4)
            throw AccuracyError("spatial quadrature did not converge in duhamel_eval", spatial_err * mnorm, tol);
        const SpatialRule r0 = spatial_rule(w, level), r1 = spatial_rule(w, level + 1);
        spatial_err = 0.0;
        for (double tau : taus)
            spatial_err = std::max(spatial_err, wmax * (spatial_integral(r0, x, tau) - spatial_integral(r1, x, tau)).frobenius());
        if (spatial_err <= 0.25 * ttol) {
            ++level;
            break;
        }
    }
    const SpatialRule rule = spatial_rule(w, level);

    auto integrand = [&](double v) {
        const double tau = t - s_lo - len * std::pow(v, p);
        if (!(tau > 0.0)) return Tensor3{};
        return weight(v) * spatial_integral(rule, x, tau);
    };
    const TensorEstimate e = adaptive_gk(integrand, 0.0, 1.0, 0.5 * ttol, 12);
    out.value = contract(e.value, w.matrix);
    out.error_estimate = (e.error + spatial_err) * mnorm;
    if (!(out.error_estimate <= tol) || !std::isfinite(out.value[0]) || !std::isfinite(out.value[1]))
        throw AccuracyError("time quadrature did not converge in duhamel_eval", out.error_estimate, tol);
    return out;
}

DuhamelTable duhamel_asymptotics_check(const SyntheticTensorField& w, double t, const std::vector<double>& radii,
                                       int directions, double tol) {
    if (radii.empty()) throw DomainError("no probe radii");
    if (directions < 1) throw DomainError("need at least one direction");
    const Sym2 m = w.integral(t);
    DuhamelTable table;
    table.t = t;
    const std::size_t count = radii.size() * directions;
    std::vector<double> res(count), err(count), scale(count);
    parallel_for(count, [&](std::size_t i) {
        const double R = radii[i / directions];
        const double th = 2.0 * kPi * static_cast<double>(i % directions) / directions;
        const Point2 x{R * std::cos(th), R * std::sin(th)};
        const DuhamelValue d = duhamel_eval(w, x, t, tol);
        const Vec2 far = contract(fundamental_tensor(x), m);
        const double r3 = R * R * R;
        res[i] = r3 * norm(d.value - far);
        err[i] = r3 * d.error_estimate;
        scale[i] = r3 * norm(far);
    });
    for (double s : scale) table.scale = std::max(table.scale, s);
    std::vector<double> column;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        DuhamelRow row;
        row.R = radii[k];
        for (int d = 0; d < directions; ++d) {
            row.residual = std::max(row.residual, res[k * directions + d]);
            row.error_estimate = std::max(row.error_estimate, err[k * directions + d]);
        }
        column.push_back(row.residual);
        table.rows.push_back(row);
    }
    table.strictly_decreasing = strictly_decreasing(column);
    table.final_ratio = table.scale > 0.0 ? column.back() / table.scale : 0.0;
    return table;
}

// ---------------------------------------------------------------------------

std::string to_string(HeatCase c) {
    switch (c) {
        case HeatCase::I: return "i";
        case HeatCase::II: return "ii";
        case HeatCase::III: return "iii";
    }
    return "i";
}

HeatCase heat_case_from_string(const std::string& s) {
    if (s == "i") return HeatCase::I;
    if (s == "ii") return HeatCase::II;
    if (s == "iii") return HeatCase::III;
    throw DomainError("unknown heat case '" + s + "' (expected i, ii or iii)");
}

std::string to_string(HeatField f) {
    switch (f) {
        case HeatField::Gaussian: return "gaussian";
        case HeatField::GradientDecay: return "gradient_decay";
        case HeatField::LaplacianDecay: return "laplacian_decay";
        case HeatField::CubicTail: return "cubic_tail";
    }
    return "gaussian";
}

HeatField heat_field_from_string(const std::string& s) {
    if (s == "gaussian") return HeatField::Gaussian;
    if (s == "gradient_decay") return HeatField::GradientDecay;
    if (s == "laplacian_decay") return HeatField::LaplacianDecay;
    if (s == "cubic_tail") return HeatField::CubicTail;
    throw DomainError("unknown heat field '" + s + "'");
}

Vec2 HeatGenerator::operator()(Point2 x) const {
    const double q = x.norm2() / (width * width);
    switch (field) {
        case HeatField::Gaussian: {
            const double g = std::exp(-q);
            return {g, 0.5 * g};
        }
        case HeatField::GradientDecay: return {1.0 + std::pow(1.0 + q, -1.25), 0.0};
        case HeatField::LaplacianDecay: {
            const double d = width * width + x.norm2();
            return {x.x1 / d, x.x2 / d};
        }
        case HeatField::CubicTail: return {std::cos(wavenumber * x.x1) * std::pow(1.0 + q, -1.5), 0.0};
    }
    return {};
}

bool HeatGenerator::admits(HeatCase c) const {
    switch (field) {
        case HeatField::Gaussian: return true;
        case HeatField::GradientDecay: return c != HeatCase::I;
        case HeatField::LaplacianDecay: return c == HeatCase::III;
        case HeatField::CubicTail: return c == HeatCase::I;
    }
    return false;
}

HeatValue heat_eval(const HeatGenerator& u0, Point2 x, double t, double tol) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive");
    if (!(u0.width > 0.0)) throw DomainError("heat field width must be positive");
    const GKRule& r = gk15();
    const double span = 10.0, st = 2.0 * std::sqrt(t);
    for (int panels = 20; panels <= 320; panels *= 2) {
        const double pw = 2.0 * span / panels, half = 0.5 * pw;
        std::vector<double> nodes, wk, wg;
        for (int p = 0; p < panels; ++p) {
            const double mid = -span + (p + 0.5) * pw;
            for (std::size_t i = 0; i < r.x.size(); ++i) {
                const double e = mid + half * r.x[i];
                const double gauss = std::exp(-e * e);
                nodes.push_back(e);
                wk.push_back(half * r.wk[i] * gauss);
                wg.push_back(half * r.wg[i] * gauss);
            }
        }
        Vec2 k{}, g{};
        double l1 = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (wk[i] == 0.0) continue;
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                if (wk[j] == 0.0) continue;
                const Vec2 v = u0({x.x1 + st * nodes[i], x.x2 + st * nodes[j]});
                const double w = wk[i] * wk[j];
                k = k + w * v;
                l1 += w * norm(v);
                if (wg[i] != 0.0 && wg[j] != 0.0) g = g + (wg[i] * wg[j]) * v;
            }
        }
        const double err = norm(k - g) / kPi;
        if (err <= tol * l1 / kPi) return {(1.0 / kPi) * k, err};
        if (panels == 320) throw AccuracyError("heat quadrature did not converge", err, tol * l1 / kPi);
    }
    return {};
}

HeatTable heat_tail_check(const HeatGenerator& u0, HeatCase c, double T, const std::vector<double>& radii,
                          int directions, int time_samples) {
    if (!u0.admits(c))
        throw DomainError(fmt::format("field {} does not satisfy the hypothesis of case {}", to_string(u0.field),
                                      to_string(c)));
    if (!(T > 0.0)) throw DomainError("T must be positive");
    if (radii.empty() || directions < 1 || time_samples < 1) throw DomainError("empty probe set");
    HeatTable table;
    table.heat_case = c;
    table.field = u0.field;
    table.T = T;
    const std::size_t per_radius = static_cast<std::size_t>(directions) * time_samples;
    std::vector<double> v(radii.size() * per_radius);
    parallel_for(v.size(), [&](std::size_t i) {
        const double R = radii[i / per_radius];
        const std::size_t rest = i % per_radius;
        const double th = 2.0 * kPi * static_cast<double>(rest / time_samples) / directions;
        const double t = T * static_cast<double>(rest % time_samples + 1) / time_samples;
        const Point2 x{R * std::cos(th), R * std::sin(th)};
        v[i] = R * R * R * norm(heat_eval(u0, x, t).value - u0(x));
    });
    std::vector<double> column;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        HeatRow row;
        row.R = radii[k];
        for (std::size_t j = 0; j < per_radius; ++j) row.value = std::max(row.value, v[k * per_radius + j]);
        column.push_back(row.value);
        table.rows.push_back(row);
    }
    table.finite = std::all_of(column.begin(), column.end(), [](double x) { return std::isfinite(x); });
    table.strictly_decreasing = strictly_decreasing(column);
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    table.non_vanishing = *hi > 0.0 && *lo >= 0.1 * *hi;
    table.pass = table.finite && (u0.boundary() ? table.non_vanishing : table.strictly_decreasing);
    return table;
}

HeatTScaling heat_T_scaling(const HeatGenerator& u0, HeatCase c, double T0, int doublings,
                            const std::vector<double>& radii) {
    if (doublings < 1) throw DomainError("need at least one doubling");
    HeatTScaling s;
    double T = T0;
    for (int k = 0; k <= doublings; ++k, T *= 2.0) {
        const HeatTable tab = heat_tail_check(u0, c, T, radii);
        double b = 0.0;
        for (const auto& row : tab.rows) b = std::max(b, row.value);
        s.T.push_back(T);
        s.bound.push_back(b);
    }
    for (std::size_t k = 1; k < s.bound.size(); ++k) {
        const double slope = std::log2(s.bound[k] / s.bound[k - 1]);
        s.slopes.push_back(slope);
        s.max_slope = k == 1 ? slope : std::max(s.max_slope, slope);
    }
    s.pass = std::isfinite(s.max_slope) && s.max_slope <= 3.0;
    return s;
}

// ---------------------------------------------------------------------------

WeightedNorms weighted_norm_monitor(const GridVectorField& u, double t) {
    WeightedNorms w;
    w.t = t;
    const GridScalarField g11 = derivative(u.u1, 0), g12 = derivative(u.u1, 1);
    const GridScalarField g21 = derivative(u.u2, 0), g22 = derivative(u.u2, 1);
    const int n = u.n();
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double r = u.u1.point(ix, iy).norm();
            const double lg = std::sqrt(std::log(kE + r));
            const double phi = (1.0 + r) * lg, psi = (1.0 + r) * (1.0 + r) * lg;
            const double speed = std::hypot(u.u1.at(ix, iy), u.u2.at(ix, iy));
            const double grad = std::sqrt(g11.at(ix, iy) * g11.at(ix, iy) + g12.at(ix, iy) * g12.at(ix, iy) +
                                          g21.at(ix, iy) * g21.at(ix, iy) + g22.at(ix, iy) * g22.at(ix, iy));
            w.sup_phi_u = std::max(w.sup_phi_u, phi * speed);
            w.sup_psi_grad = std::max(w.sup_psi_grad, psi * grad);
        }
    return w;
}

double hdot_minus1_norm2(const GridVectorField& u) {
    const int n = u.n();
    Spectral& sp = spectral_for(n, u.box());
    const Spectrum a = sp.forward(u.u1), b = sp.forward(u.u2);
    const int m = sp.nk();
    double s = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            const double k2 = sp.kx(ix) * sp.kx(ix) + sp.ky(iy) * sp.ky(iy);
            if (k2 == 0.0) continue;
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            s += sp.hermitian_weight(ix) * (std::norm(a[i]) + std::norm(b[i])) / k2;
        }
    const double nn = static_cast<double>(n) * n;
    return s * u.box() * u.box() / (nn * nn);
}

namespace {

double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(t[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    const double den = count * sxx - sx * sx;
    return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : (count * sxy - sx * sy) / den;
}

}  // namespace

L2DecayResult l2_decay_track(const Trajectory& traj, const GridVectorField& u0, double late_fraction) {
    if (traj.snapshots.empty()) throw DomainError("trajectory has no snapshots");
    if (!(late_fraction > 0.0 && late_fraction <= 1.0)) throw DomainError("late fraction must lie in (0, 1]");
    L2DecayResult res;
    res.C = energy(u0) + hdot_minus1_norm2(u0) / (2.0 * kE);
    for (const Snapshot& s : traj.snapshots) {
        if (!s.omega) throw DomainError("snapshot without vorticity");
        GridScalarField w = *s.omega;
        const double mean = w.mean();
        for (auto& v : w.values) v -= mean;
        const GridVectorField u = velocity_from_vorticity(w);
        const GridVectorField h = heat_multiplier(u0, s.time);
        GridVectorField d = u;
        for (std::size_t i = 0; i < d.u1.size(); ++i) {
            d.u1.values[i] -= h.u1.values[i];
            d.u2.values[i] -= h.u2.values[i];
        }
        L2DecayRow row;
        row.t = s.time;
        row.energy = energy(u);
        row.heat_energy = energy(h);
        row.difference = energy(d);
        row.heat_bound = res.C / (1.0 + s.time);
        res.rows.push_back(row);
    }
    res.energy_non_increasing = true;
    res.heat_bound_holds = true;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& r = res.rows[i];
        if (r.heat_energy > r.heat_bound * (1.0 + 1e-12)) res.heat_bound_holds = false;
        if (i > 0 && r.energy > res.rows[i - 1].energy * (1.0 + 1e-12)) res.energy_non_increasing = false;
    }
    std::vector<double> t, e, d;
    for (const auto& r : res.rows)
        if (r.t > 0.0) {
            t.push_back(r.t);
            e.push_back(r.energy);
            d.push_back(r.difference);
        }
    const std::size_t keep = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(late_fraction * t.size())));
    const std::size_t start = t.size() > keep ? t.size() - keep : 0;
    const std::vector<double> tl(t.begin() + start, t.end()), el(e.begin() + start, e.end()),
        dl(d.begin() + start, d.end());
    res.energy_exponent = loglog_slope(tl, el);
    res.difference_exponent = loglog_slope(tl, dl);
    return res;
}

}  // namespace hexns
