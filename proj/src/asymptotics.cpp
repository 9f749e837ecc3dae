#include "hexns/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hexns/error.hpp"
#include "hexns/kernels.hpp"

namespace hexns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Wrap into (-pi, pi] in extended precision, then round.
double wrap_signed(long double a) {
    while (a > kPiL) a -= 2 * kPiL;
    while (a <= -kPiL) a += 2 * kPiL;
    return static_cast<double>(a);
}

}  // namespace

std::array<double, 3> flux_integrals(const GridVectorField& u) {
    return {grid_inner(u.u1, u.u1), 2.0 * grid_inner(u.u1, u.u2), grid_inner(u.u2, u.u2)};
}

void accumulate_flux(MomentumFlux& flux, const GridVectorField& u, double weight) {
    const auto f = flux_integrals(u);
    flux.a += weight * f[0];
    flux.b += weight * f[1];
    flux.d += weight * f[2];
    flux.da = f[0];
    flux.db = f[1];
    flux.dd = f[2];
}

double flux_angle(const MomentumFlux& flux) {
    const double c = flux.d - flux.a, s = flux.b;
    if (c == 0.0 && s == 0.0) throw DomainError("hexagon undefined: z vanishes");
    long double al = std::atan2(static_cast<long double>(s), static_cast<long double>(c));
    if (al < 0) al += 2 * kPiL;
    double a = static_cast<double>(al);
    if (a >= 2 * kPi) a = 0.0;
    return a;
}

HexagonSpeed hexagon_speed(const MomentumFlux& flux) {
    const double c = flux.d - flux.a, s = flux.b;
    const double z2 = c * c + s * s;
    if (z2 == 0.0) throw DomainError("hexagon undefined: z vanishes");
    HexagonSpeed hs;
    hs.hex_speed = std::fabs(flux.db * c - s * (flux.dd - flux.da)) / z2;
    hs.bound = std::sqrt(2.0) * (flux.da + flux.dd) / std::sqrt(z2);
    return hs;
}

HexInvariant invariant_from_flux(const MomentumFlux& flux) {
    HexInvariant inv;
    inv.z = {flux.a - flux.d, flux.b};
    inv.L = std::hypot(flux.a - flux.d, flux.b) / kPi;
    if (inv.z == std::complex<double>(0.0, 0.0)) return inv;

    HexGeometry g;
    g.alpha = flux_angle(flux);
    const long double al = g.alpha;
    for (int k = 0; k < 6; ++k) {
        g.vertex_angles[k] = wrap_signed((k * kPiL - al) / 3);
        g.horizontal_angles[k] = wrap_signed((k * kPiL + kPiL / 2 - al) / 3);
        g.vertices[k] = {std::cos(g.vertex_angles[k]), std::sin(g.vertex_angles[k])};
    }
    g.sigma_vertical = std::polar(1.0, -2.0 * g.alpha);
    g.sigma_horizontal = -g.sigma_vertical;
    const HexagonSpeed hs = hexagon_speed(flux);
    g.hex_speed = hs.hex_speed;
    g.vertex_speed = hs.hex_speed / 3.0;
    g.speed_bound = hs.bound;
    inv.hexagon = g;
    return inv;
}

Vec2 grad_H(Point2 x, const MomentumFlux& flux) {
    if (x.norm() < kOriginTolerance) throw SingularityError("grad H evaluated at the origin");
    const double x1 = x.x1, x2 = x.x2, r2 = x.norm2();
    const double amd = flux.a - flux.d, b = flux.b;
    const double den = kPi * r2 * r2 * r2;
    return {(-amd * (x1 * x1 * x1 - 3 * x1 * x2 * x2) - b * (3 * x1 * x1 * x2 - x2 * x2 * x2)) / den,
            (amd * (x2 * x2 * x2 - 3 * x1 * x1 * x2) + b * (x1 * x1 * x1 - 3 * x1 * x2 * x2)) / den};
}

Vec2 profile_P(double theta, const MomentumFlux& flux) {
    const double alpha = flux_angle(flux);
    const double amp = std::hypot(flux.d - flux.a, flux.b) / kPi;
    return {amp * std::cos(3 * theta + alpha), amp * std::sin(3 * theta + alpha)};
}

double short_time_slope(const GridVectorField& u0) {
    const auto f = flux_integrals(u0);
    return std::hypot(f[0] - f[2], f[1]) / kPi;
}

double tail_bound(double t, double C, double p) {
    if (!(p > 1.0)) return std::numeric_limits<double>::infinity();
    return C * std::pow(t, 1.0 - p) / (p - 1.0);
}

LargeTimeResult large_time_extrapolate(const std::vector<FluxSample>& series, const LargeTimeOptions& opt) {
    LargeTimeResult out;
    if (series.empty()) return out;
    const FluxSample& last = series.back();
    out.invariant = invariant_from_flux(last.flux);

    std::vector<const FluxSample*> pos;
    for (const auto& s : series)
        if (s.t > 0.0 && s.energy > 0.0) pos.push_back(&s);
    if (pos.size() < 4 || !(last.energy > 0.0)) return out;
    const double e0 = series.front().energy;
    const bool decayed = e0 >= opt.decay_factor * last.energy;

    const std::size_t start = static_cast<std::size_t>(pos.size() * (1.0 - opt.fit_fraction));
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = std::min(start, pos.size() - 2); i < pos.size(); ++i) {
        const double X = std::log(pos[i]->t), Y = std::log(pos[i]->energy);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        n += 1;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.decay_exponent = -slope;
    out.decay_constant = std::exp((sy - slope * sx) / n);
    out.tail_bound = tail_bound(last.t, out.decay_constant, out.decay_exponent);
    out.conclusive = decayed && std::isfinite(out.tail_bound);
    return out;
}

}  // namespace hexns
