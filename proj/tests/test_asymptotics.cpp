#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hexns/asymptotics.hpp"
#include "hexns/error.hpp"
#include "hexns/initdata.hpp"
#include "hexns/kernels.hpp"
#include "hexns/solver.hpp"

using namespace hexns;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

MomentumFlux flux_of(double a, double b, double d) {
    MomentumFlux f;
    f.a = a;
    f.b = b;
    f.d = d;
    return f;
}

// Random flux obeying a, d >= 0 and b^2 <= 4ad, with derivatives of the same kind.
MomentumFlux random_flux(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto triple = [&](double& a, double& b, double& d) {
        a = u(rng) + 1e-3;
        d = u(rng) + 1e-3;
        b = 2.0 * std::sqrt(a * d) * (2.0 * u(rng) - 1.0);
    };
    MomentumFlux f;
    triple(f.a, f.b, f.d);
    triple(f.da, f.db, f.dd);
    return f;
}

double angle_distance(double x, double y) {
    return std::fabs(std::remainder(x - y, 2 * kPi));
}

// Analytic velocity grad^perp psi for psi = (x1 + 0.3 x2^2 + 0.2 x1 x2) exp(-|x|^2),
// optionally rotated: u_R(x) = R u(R^T x).
GridVectorField analytic_field(int n, double box, double theta) {
    GridVectorField u(n, box);
    const double c = std::cos(theta), s = std::sin(theta);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const Point2 x = u.u1.point(ix, iy);
            const double y1 = c * x.x1 + s * x.x2, y2 = -s * x.x1 + c * x.x2;
            const double g = std::exp(-(y1 * y1 + y2 * y2));
            const double p = y1 + 0.3 * y2 * y2 + 0.2 * y1 * y2;
            const double d1 = (1.0 + 0.2 * y2 - 2 * y1 * p) * g;
            const double d2 = (0.6 * y2 + 0.2 * y1 - 2 * y2 * p) * g;
            const double v1 = -d2, v2 = d1;
            u.u1.at(ix, iy) = c * v1 - s * v2;
            u.u2.at(ix, iy) = s * v1 + c * v2;
        }
    return u;
}

MomentumFlux instantaneous(const GridVectorField& u) {
    MomentumFlux f;
    accumulate_flux(f, u, 1.0);
    return f;
}

}  // namespace

TEST_CASE("hand-evaluated invariants", "[asymptotics]") {
    SECTION("a = 1, b = d = 0") {
        const HexInvariant inv = invariant_from_flux(flux_of(1, 0, 0));
        CHECK(inv.z == std::complex<double>(1.0, 0.0));
        CHECK_THAT(inv.L, WithinRel(1.0 / kPi, 1e-15));
        REQUIRE(inv.defined());
        CHECK_THAT(inv.hexagon->alpha, WithinRel(kPi, 1e-15));
        for (int k = 0; k < 6; ++k)
            CHECK(angle_distance(inv.hexagon->vertex_angles[k], (k * kPi - kPi) / 3) < 1e-15);
    }
    SECTION("a = d, b > 0") {
        const HexInvariant inv = invariant_from_flux(flux_of(0.7, 0.4, 0.7));
        REQUIRE(inv.defined());
        CHECK_THAT(inv.hexagon->alpha, WithinRel(kPi / 2, 1e-15));
        for (int k = 0; k < 6; ++k)
            CHECK(angle_distance(inv.hexagon->vertex_angles[k], -kPi / 6 + k * kPi / 3) < 1e-15);
    }
    SECTION("z = 0 leaves the hexagon undefined") {
        const HexInvariant inv = invariant_from_flux(flux_of(0.5, 0.0, 0.5));
        CHECK_FALSE(inv.defined());
        CHECK(inv.L == 0.0);
        CHECK_THROWS_AS(flux_angle(flux_of(0.5, 0.0, 0.5)), DomainError);
        CHECK_THROWS_AS(hexagon_speed(flux_of(0.5, 0.0, 0.5)), DomainError);
        CHECK_THROWS_AS(profile_P(0.3, flux_of(0.5, 0.0, 0.5)), DomainError);
    }
}

TEST_CASE("hexagon geometry", "[asymptotics]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const MomentumFlux f = random_flux(rng);
        const HexInvariant inv = invariant_from_flux(f);
        REQUIRE(inv.defined());
        const HexGeometry& g = *inv.hexagon;
        CHECK(g.alpha >= 0.0);
        CHECK(g.alpha < 2 * kPi);
        CHECK_THAT(std::cos(g.alpha), WithinAbs((f.d - f.a) / std::abs(inv.z), 1e-15));
        CHECK_THAT(std::sin(g.alpha), WithinAbs(f.b / std::abs(inv.z), 1e-15));
        CHECK_THAT(std::abs(inv.z), WithinRel(kPi * inv.L, 1e-15));
        CHECK(kPi * inv.L <= (f.a + f.d) * (1 + 1e-15));
        CHECK_THAT(std::abs(g.sigma_vertical), WithinAbs(1.0, 1e-15));
        CHECK(g.sigma_horizontal == -g.sigma_vertical);
        CHECK_THAT(g.vertex_speed, WithinRel(g.hex_speed / 3, 1e-15));
        for (int k = 0; k < 6; ++k) {
            CHECK(std::fabs(std::sin(3 * g.vertex_angles[k] + g.alpha)) <= 1e-15 * 8);
            CHECK(std::fabs(std::cos(3 * g.horizontal_angles[k] + g.alpha)) <= 1e-15 * 8);
            const std::complex<double> v(g.vertices[k][0], g.vertices[k][1]);
            CHECK(std::abs(std::pow(v, 6) - std::polar(1.0, -2 * g.alpha)) < 1e-12);
            CHECK_THAT(angle_distance(g.vertex_angles[(k + 1) % 6], g.vertex_angles[k]), WithinAbs(kPi / 3, 1e-14));
            // vertical and horizontal sets differ by a rotation of pi/6
            double best = 10.0;
            for (int j = 0; j < 6; ++j)
                best = std::min(best, angle_distance(g.vertex_angles[k] + kPi / 6, g.horizontal_angles[j]));
            CHECK(best < 1e-12);
        }
    }
}

TEST_CASE("grad H closed form", "[asymptotics]") {
    const Vec2 g = grad_H({1.0, 0.0}, flux_of(1, 0, 0));
    CHECK_THAT(g[0], WithinRel(-1.0 / kPi, 1e-15));
    CHECK(g[1] == 0.0);
    CHECK_THROWS_AS(grad_H({0.0, 0.0}, flux_of(1, 0, 0)), SingularityError);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const MomentumFlux f = random_flux(rng);
        const Point2 x{u(rng), u(rng)};
        const Vec2 v = grad_H(x, f);
        const double expect = std::hypot(f.a - f.d, f.b) / (kPi * std::pow(x.norm(), 3));
        CHECK_THAT(std::hypot(v[0], v[1]), WithinRel(expect, 1e-12));
        const Vec2 w = grad_H(2.5 * x, f);
        CHECK_THAT(w[0], WithinAbs(v[0] / std::pow(2.5, 3), 1e-13 * std::fabs(expect)));
        CHECK_THAT(w[1], WithinAbs(v[1] / std::pow(2.5, 3), 1e-13 * std::fabs(expect)));
        // contraction of the fundamental tensor with the flux matrix
        const Vec2 c = contract(fundamental_tensor(x), Sym2{f.a, f.b / 2, f.d});
        CHECK_THAT(v[0], WithinAbs(c[0], 1e-12 * expect));
        CHECK_THAT(v[1], WithinAbs(c[1], 1e-12 * expect));
    }
}

TEST_CASE("trigonometric profile", "[asymptotics]") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const MomentumFlux f = random_flux(rng);
        const HexInvariant inv = invariant_from_flux(f);
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double th = -kPi + 2 * kPi * i / 1000;
            const Vec2 p = profile_P(th, f);
            const Vec2 g = grad_H({std::cos(th), std::sin(th)}, f);
            const double m = std::hypot(p[0], p[1]);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
            // the profile is grad H written in the polar frame (radial, angular)
            const double gr = g[0] * std::cos(th) + g[1] * std::sin(th);
            const double ga = -g[0] * std::sin(th) + g[1] * std::cos(th);
            CHECK_THAT(std::hypot(gr, ga), WithinAbs(m, 1e-12 * inv.L));
            const Vec2 q = profile_P(th + 2 * kPi / 3, f);
            CHECK_THAT(q[0], WithinAbs(p[0], 1e-12 * inv.L));
            CHECK_THAT(q[1], WithinAbs(p[1], 1e-12 * inv.L));
        }
        CHECK(hi - lo < 1e-12);
        for (double th : inv.hexagon->vertex_angles) CHECK(std::fabs(profile_P(th, f)[1]) < 1e-15);
    }
}

TEST_CASE("hexagon speed", "[asymptotics]") {
    MomentumFlux f = flux_of(1.0, 0.0, 0.3);
    f.da = 0.2;
    f.dd = 0.7;
    CHECK(hexagon_speed(f).hex_speed == 0.0);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 1000; ++trial) {
        const MomentumFlux g = random_flux(rng);
        const HexagonSpeed hs = hexagon_speed(g);
        CHECK(hs.hex_speed >= 0.0);
        CHECK(hs.hex_speed <= hs.bound * (1 + 1e-9));
        CHECK_THAT(hs.bound, WithinRel(std::sqrt(2.0) * (g.da + g.dd) / (kPi * invariant_from_flux(g).L), 1e-14));
    }
}

TEST_CASE("short-time slope", "[asymptotics]") {
    const int n = 64;
    const double box = 8.0;
    GridVectorField u(n, box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) u.u1.at(ix, iy) = std::exp(-u.u1.point(ix, iy).norm2());
    CHECK_THAT(short_time_slope(u), WithinRel(grid_inner(u.u1, u.u1) / kPi, 1e-14));
    const GridVectorField sym = make_datum(128, 16.0, {}, SymmetryClass::Symmetric, 4);
    CHECK(short_time_slope(sym) < 1e-12 * energy(sym));
}

TEST_CASE("rotation covariance of the invariant", "[asymptotics]") {
    const MomentumFlux f0 = instantaneous(analytic_field(128, 16.0, 0.0));
    const std::complex<double> z0(f0.da - f0.dd, f0.db);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int trial = 0; trial < 5; ++trial) {
        const double th = ang(rng);
        const MomentumFlux f = instantaneous(analytic_field(128, 16.0, th));
        const std::complex<double> z(f.da - f.dd, f.db);
        CHECK_THAT(std::abs(z), WithinRel(std::abs(z0), 1e-10));
        CHECK(std::abs(z - std::polar(1.0, 2 * th) * z0) < 1e-10 * std::abs(z0));
    }
}

TEST_CASE("tail bound", "[asymptotics]") {
    CHECK(std::isinf(tail_bound(2.0, 1.0, 1.0)));
    CHECK(std::isinf(tail_bound(2.0, 1.0, 0.5)));
    double prev = 1e300;
    for (double t = 1.0; t < 100.0; t *= 1.5) {
        const double b = tail_bound(t, 3.0, 2.0);
        CHECK(b >= 0.0);
        CHECK(b < prev);
        CHECK_THAT(b, WithinRel(3.0 / t, 1e-14));
        prev = b;
    }
}

TEST_CASE("large-time extrapolation on a synthetic power law", "[asymptotics]") {
    std::vector<FluxSample> series;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.1 * std::pow(1.05, i);
        FluxSample s;
        s.t = t;
        s.energy = 4.0 * std::pow(1.0 + t, -2.0);
        s.flux = flux_of(1.0 + t, 0.3, 0.5);
        series.push_back(s);
    }
    const LargeTimeResult r = large_time_extrapolate(series);
    CHECK(r.conclusive);
    CHECK_THAT(r.decay_exponent, WithinAbs(2.0, 0.05));
    CHECK(r.tail_bound > 0.0);
    CHECK(r.invariant.defined());

    std::vector<FluxSample> flat(series.begin(), series.begin() + 5);
    CHECK_FALSE(large_time_extrapolate(flat).conclusive);
}

TEST_CASE("symmetric runs keep the hexagon fixed", "[asymptotics]") {
    const int n = 64;
    const double box = 16.0;
    RunOptions opt;
    opt.final_time = 0.5;
    opt.snapshot_every = 0.1;
    SECTION("half symmetric ii") {
        const Datum d = make_datum_full(n, box, {}, SymmetryClass::HalfSymmetricII, 12);
        const Trajectory tr = run(initial_state(d.omega), opt);
        for (const auto& row : tr.series) {
            if (row.t == 0.0) {
                CHECK_FALSE(row.hex_speed.has_value());
                continue;
            }
            REQUIRE(row.hex_speed.has_value());
            CHECK(*row.hex_speed < 1e-8);
            CHECK(angle_distance(*row.alpha, tr.series.back().alpha.value()) < 1e-12);
        }
    }
    SECTION("half symmetric i") {
        const Datum d = make_datum_full(n, box, {}, SymmetryClass::HalfSymmetricI, 12);
        const Trajectory tr = run(initial_state(d.omega), opt);
        for (const auto& row : tr.series) {
            if (row.t == 0.0) {
                CHECK_FALSE(row.hex_speed.has_value());
                continue;
            }
            REQUIRE(row.hex_speed.has_value());
            CHECK(*row.hex_speed < 1e-8);
        }
    }
    SECTION("radial") {
        const Datum d = make_datum_full(n, box, {}, SymmetryClass::Radial, 0);
        const Trajectory tr = run(initial_state(d.omega), opt);
        for (const auto& row : tr.series) {
            const double tr_ = row.flux.a + row.flux.d;
            CHECK(std::fabs(row.flux.b) <= 1e-10 * tr_);
            CHECK(std::fabs(row.flux.a - row.flux.d) <= 1e-10 * tr_);
        }
    }
}
