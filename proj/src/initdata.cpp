#include "hexns/initdata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hexns/error.hpp"
#include "hexns/solver.hpp"

namespace hexns {

namespace {

int reflect(int i, int n) { return (n - i) % n; }

// 53 random bits in [0, 1); independent of the standard library's
// distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::Generic: return "generic";
        case SymmetryClass::Radial: return "radial";
        case SymmetryClass::Symmetric: return "symmetric";
        case SymmetryClass::HalfSymmetricI: return "half_symmetric_i";
        case SymmetryClass::HalfSymmetricII: return "half_symmetric_ii";
    }
    return "generic";
}

SymmetryClass symmetry_class_from_string(const std::string& s) {
    for (auto c : {SymmetryClass::Generic, SymmetryClass::Radial, SymmetryClass::Symmetric,
                   SymmetryClass::HalfSymmetricI, SymmetryClass::HalfSymmetricII})
        if (to_string(c) == s) return c;
    throw DomainError("unknown symmetry class '" + s + "'");
}

double bump_profile(const BumpSpec& b, Point2 x) {
    const double s2 = (x - b.center).norm2() / (b.radius * b.radius);
    if (s2 >= 1.0) return 0.0;
    return b.amplitude * std::exp(1.0 - 1.0 / (1.0 - s2));
}

void require_central_quarter(const std::vector<BumpSpec>& bumps, double box) {
    for (const auto& b : bumps) {
        if (!(b.radius > 0.0) || !std::isfinite(b.radius)) throw DomainError("bump radius must be positive");
        if (!std::isfinite(b.amplitude) || !std::isfinite(b.center.x1) || !std::isfinite(b.center.x2))
            throw DomainError("bump parameters must be finite");
        if (std::fabs(b.center.x1) + b.radius >= box / 4 || std::fabs(b.center.x2) + b.radius >= box / 4)
            throw DomainError("bump support leaves the central quarter of the box");
    }
}

GridScalarField stream_function(int n, double box, const std::vector<BumpSpec>& bumps) {
    require_central_quarter(bumps, box);
    GridScalarField psi(n, box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            double v = 0.0;
            for (const auto& b : bumps) v += bump_profile(b, psi.point(ix, iy));
            psi.at(ix, iy) = v;
        }
    return psi;
}

GridScalarField symmetrize(const GridScalarField& psi, SymmetryClass c) {
    const int n = psi.n;
    GridScalarField out(n, psi.box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const int rx = reflect(ix, n), ry = reflect(iy, n);
            double v;
            switch (c) {
                case SymmetryClass::Symmetric: {
                    // characters: R1 -> -1, R2 -> -1, swap -> -1
                    const double klein = psi.at(ix, iy) - psi.at(rx, iy) - psi.at(ix, ry) + psi.at(rx, ry);
                    const double swapped = psi.at(iy, ix) - psi.at(ry, ix) - psi.at(iy, rx) + psi.at(ry, rx);
                    v = (klein - swapped) / 8.0;
                    break;
                }
                case SymmetryClass::HalfSymmetricI:
                    v = (psi.at(ix, iy) - psi.at(rx, iy) - psi.at(ix, ry) + psi.at(rx, ry)) / 4.0;
                    break;
                case SymmetryClass::HalfSymmetricII:
                    v = (psi.at(ix, iy) - psi.at(iy, ix)) / 2.0;
                    break;
                default:
                    v = psi.at(ix, iy);
            }
            out.at(ix, iy) = v;
        }
    return out;
}

GridVectorField stream_to_velocity(const GridScalarField& psi) {
    const int n = psi.n;
    const double scale = psi.max_abs();
    const int band = std::max(2, n / 32);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const bool edge = ix < band || iy < band || ix >= n - band || iy >= n - band;
            if (edge && std::fabs(psi.at(ix, iy)) > 1e-14 * scale)
                throw DomainError("stream function support touches the box boundary");
        }
    Spectral& sp = spectral_for(n, psi.box);
    Spectrum s = sp.forward(psi), d1s, d2s;
    sp.d1(s, d1s);
    sp.d2(s, d2s);
    for (auto& v : d2s) v = -v;
    GridVectorField u;
    u.u1 = sp.inverse_field(d2s);
    u.u2 = sp.inverse_field(d1s);
    return u;
}

std::vector<BumpSpec> random_bumps(double box, std::uint64_t seed, int count, double support_radius) {
    if (count < 1) throw DomainError("bump count must be positive");
    const double rs = support_radius > 0.0 ? support_radius : box / 16.0;
    if (rs >= box / 4) throw DomainError("bump family does not fit the central quarter");
    std::mt19937_64 rng(seed);
    std::vector<BumpSpec> out;
    for (int i = 0; i < count; ++i) {
        BumpSpec b;
        b.radius = rs * (0.55 + 0.2 * unit(rng));
        const double reach = rs - b.radius;
        const double r = reach * std::sqrt(unit(rng));
        const double th = 2.0 * std::acos(-1.0) * unit(rng);
        b.center = {r * std::cos(th), r * std::sin(th)};
        b.amplitude = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unit(rng));
        out.push_back(b);
    }
    return out;
}

Datum make_datum_full(int n, double box, const std::vector<BumpSpec>& bumps, SymmetryClass c,
                      std::uint64_t seed) {
    require_valid_grid(n, box);
    std::vector<BumpSpec> use = bumps;
    if (c == SymmetryClass::Generic && use.empty())
        throw DomainError("generic class needs a non-empty bump list");
    if (c == SymmetryClass::Radial) {
        BumpSpec b;
        b.radius = use.empty() ? box / 16.0 : use.front().radius;
        b.amplitude = use.empty() ? 1.0 : use.front().amplitude;
        use = {b};
    } else if (use.empty()) {
        use = random_bumps(box, seed);
    }
    Datum d;
    d.psi = symmetrize(stream_function(n, box, use), c);
    if (!(d.psi.max_abs() > 0.0)) throw DomainError("bumps are incompatible with the symmetry class");
    d.u = stream_to_velocity(d.psi);
    d.omega = curl(d.u);
    // The spectral curl of grad^perp psi has zero mean up to roundoff.
    const double mean = d.omega.mean();
    for (auto& v : d.omega.values) v -= mean;
    return d;
}

GridVectorField make_datum(int n, double box, const std::vector<BumpSpec>& bumps, SymmetryClass c,
                           std::uint64_t seed) {
    return make_datum_full(n, box, bumps, c, seed).u;
}

double class_identity_defect(const GridVectorField& u, SymmetryClass c) {
    const int n = u.n();
    const double scale = std::max(u.max_abs(), std::numeric_limits<double>::min());
    double worst = 0.0;
    auto note = [&](double v) { worst = std::max(worst, std::fabs(v)); };
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const int rx = reflect(ix, n), ry = reflect(iy, n);
            const bool want_i = c == SymmetryClass::Symmetric || c == SymmetryClass::HalfSymmetricI;
            const bool want_ii = c == SymmetryClass::Symmetric || c == SymmetryClass::HalfSymmetricII;
            if (want_i) {
                note(u.u1.at(rx, iy) + u.u1.at(ix, iy));
                note(u.u1.at(ix, ry) - u.u1.at(ix, iy));
                note(u.u2.at(rx, iy) - u.u2.at(ix, iy));
                note(u.u2.at(ix, ry) + u.u2.at(ix, iy));
            }
            if (want_ii) note(u.u1.at(ix, iy) - u.u2.at(iy, ix));
            if (c == SymmetryClass::Radial) {
                const Point2 x = u.u1.point(ix, iy);
                const double r = x.norm();
                if (r > 0.0) note((u.u1.at(ix, iy) * x.x1 + u.u2.at(ix, iy) * x.x2) / r);
            }
        }
    return worst / scale;
}

NonsymmetryResult nonsymmetry_check(const GridVectorField& u0) {
    NonsymmetryResult r;
    r.matrix.m11 = grid_inner(u0.u1, u0.u1);
    r.matrix.m12 = grid_inner(u0.u1, u0.u2);
    r.matrix.m22 = grid_inner(u0.u2, u0.u2);
    const double lhs = std::fabs(r.matrix.m11 - r.matrix.m22) + std::fabs(2.0 * r.matrix.m12);
    r.nonsymmetric = lhs > 1e-10 * (r.matrix.m11 + r.matrix.m22);
    return r;
}

Kappa0 kappa0_full(const GridVectorField& u0) {
    const int n = u0.n();
    const double box = u0.box();
    const double scale = std::max(u0.max_abs(), std::numeric_limits<double>::min());
    if (std::fabs(u0.u1.mean()) > 1e-12 * scale || std::fabs(u0.u2.mean()) > 1e-12 * scale)
        throw DomainError("kappa0 needs a field with zero mean mode");
    Spectral& sp = spectral_for(n, box);
    const Spectrum U1 = sp.forward(u0.u1), U2 = sp.forward(u0.u2);
    const int m = sp.nk();
    double s1 = 0.0, s2 = 0.0, su = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            if (iy == 0 && ix == 0) continue;
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            const double k2 = sp.kx(ix) * sp.kx(ix) + sp.ky(iy) * sp.ky(iy);
            const double w = sp.hermitian_weight(ix) / k2;
            const double p1 = std::norm(U1[i]), p2 = std::norm(U2[i]);
            s1 += w * (p1 - p2);
            s2 += w * 2.0 * (U1[i].real() * U2[i].real() + U1[i].imag() * U2[i].imag());
            su += w * (p1 + p2);
        }
    const double norm = box * box / (static_cast<double>(n) * n * n * n);
    Kappa0 k;
    k.value = std::hypot(s1, s2) * norm;
    k.unsigned_scale = su * norm;
    return k;
}

double kappa0(const GridVectorField& u0) { return kappa0_full(u0).value; }

namespace {

// C-infinity step: 1 for s <= 0.7, 0 for s >= 0.95.
double moment_window(double s) {
    auto f = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
    const double v = (0.95 - s) / 0.25;
    return f(v) / (f(v) + f(1.0 - v));
}

}  // namespace

Vec2 first_moments(const GridScalarField& omega) {
    const double half = omega.box / 2;
    std::vector<double> win(omega.n);
    for (int i = 0; i < omega.n; ++i) win[i] = moment_window(std::fabs(omega.coord(i)) / half);
    double m1 = 0.0, m2 = 0.0;
    for (int iy = 0; iy < omega.n; ++iy)
        for (int ix = 0; ix < omega.n; ++ix) {
            const Point2 x = omega.point(ix, iy);
            const double w = win[ix] * win[iy] * omega.at(ix, iy);
            m1 += x.x1 * w;
            m2 += x.x2 * w;
        }
    const double h2 = omega.h() * omega.h();
    return {m1 * h2, m2 * h2};
}

double effective_support_radius(const GridScalarField& omega, double rel) {
    const double thr = rel * omega.max_abs();
    double r = 0.0;
    for (int iy = 0; iy < omega.n; ++iy)
        for (int ix = 0; ix < omega.n; ++ix)
            if (std::fabs(omega.at(ix, iy)) > thr) r = std::max(r, omega.point(ix, iy).norm());
    return r;
}

}  // namespace hexns
