#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hexns/error.hpp"
#include "hexns/grid.hpp"
#include "hexns/initdata.hpp"
#include "hexns/kernels.hpp"
#include "hexns/solver.hpp"
#include "hexns/verify.hpp"

using namespace hexns;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

SyntheticTensorField bump_field(Sym2 m, double a = 0.0) {
    SyntheticTensorField w;
    w.matrix = m;
    w.exponent = a;
    return w;
}

double vec_dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

struct LongRun {
    Datum datum;
    Trajectory traj;
};

// Generic datum on a coarse grid, long enough for the late-time window.
const LongRun& long_run() {
    static const LongRun r = [] {
        LongRun out;
        out.datum = make_datum_full(128, 16.0, random_bumps(16.0, 42, 3, 2.0), SymmetryClass::Generic, 42);
        RunOptions o;
        o.final_time = 8.0;
        o.snapshot_every = 0.25;
        o.dt_max = 0.02;
        out.traj = run(initial_state(out.datum.omega), o);
        return out;
    }();
    return r;
}

}  // namespace

TEST_CASE("profile and heat names round trip", "[verify]") {
    for (auto p : {SpatialProfile::Bump, SpatialProfile::Gaussian})
        CHECK(spatial_profile_from_string(to_string(p)) == p);
    for (auto c : {HeatCase::I, HeatCase::II, HeatCase::III}) CHECK(heat_case_from_string(to_string(c)) == c);
    for (auto f : {HeatField::Gaussian, HeatField::GradientDecay, HeatField::LaplacianDecay, HeatField::CubicTail})
        CHECK(heat_field_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(spatial_profile_from_string("box"), DomainError);
    CHECK_THROWS_AS(heat_case_from_string("iv"), DomainError);
}

TEST_CASE("synthetic field integral matches its parts", "[verify]") {
    SyntheticTensorField w = bump_field({1.0, 0.5, -2.0}, 0.5);
    w.time_scale = 2.0;
    // int_0^t (s/ts)^{-a} ds = ts^a t^{1-a} / (1-a)
    const double t = 3.0;
    const double time_part = std::pow(2.0, 0.5) * std::pow(t, 0.5) / 0.5;
    const Sym2 I = w.integral(t);
    CHECK_THAT(I.m11, WithinRel(time_part * w.spatial_mass(), 1e-13));
    CHECK_THAT(I.m12, WithinRel(0.5 * time_part * w.spatial_mass(), 1e-13));
    CHECK_THAT(I.m22, WithinRel(-2.0 * time_part * w.spatial_mass(), 1e-13));

    SyntheticTensorField g = w;
    g.profile = SpatialProfile::Gaussian;
    g.width = 0.5;
    CHECK_THAT(g.spatial_mass(), WithinRel(kPi * 0.25, 1e-14));
    CHECK(g.spatial({g.support_radius(), 0.0}) <= 1.0001e-13);
}

TEST_CASE("synthetic field rejects bad parameters", "[verify]") {
    SyntheticTensorField w;
    w.exponent = 1.0;
    CHECK_THROWS_AS(w.validate(), DomainError);
    w.exponent = -0.1;
    CHECK_THROWS_AS(w.validate(), DomainError);
    w = SyntheticTensorField{};
    w.width = 0.0;
    CHECK_THROWS_AS(w.validate(), DomainError);
    w = SyntheticTensorField{};
    w.time_scale = -1.0;
    CHECK_THROWS_AS(w.validate(), DomainError);
}

TEST_CASE("duhamel of zero field is zero", "[verify]") {
    const auto v = duhamel_eval(bump_field({0.0, 0.0, 0.0}), {3.0, 1.0}, 1.0);
    CHECK(v.value[0] == 0.0);
    CHECK(v.value[1] == 0.0);
}

TEST_CASE("duhamel rejects probes near the support", "[verify]") {
    const auto w = bump_field({1.0, 0.0, 0.0});
    CHECK_THROWS_AS(duhamel_eval(w, {1.5, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(duhamel_eval(w, {3.0, 0.0}, 0.0), DomainError);
    CHECK_THROWS_AS(duhamel_eval_window(w, {3.0, 0.0}, 1.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(duhamel_eval_window(w, {3.0, 0.0}, 1.0, 0.0, 1.5), DomainError);
    CHECK_THROWS_AS(duhamel_asymptotics_check(w, 1.0, {}), DomainError);
}

TEST_CASE("duhamel is additive in the time window", "[verify]") {
    const auto w = bump_field({1.0, 0.3, -0.5});
    const Point2 x{2.5, 1.5};
    const double t = 1.0;
    const auto full = duhamel_eval(w, x, t);
    const auto lo = duhamel_eval_window(w, x, t, 0.0, 0.5 * t);
    const auto hi = duhamel_eval_window(w, x, t, 0.5 * t, t);
    const Vec2 sum{lo.value[0] + hi.value[0], lo.value[1] + hi.value[1]};
    CHECK(vec_dist(full.value, sum) <= 1e-10);
    CHECK(full.error_estimate <= 1e-10);
}

TEST_CASE("duhamel is linear in the field", "[verify]") {
    const Point2 x{-2.0, 2.5};
    for (double a : {0.0, 0.7}) {
        const Sym2 m1{0.6, -0.2, 0.1}, m2{-0.3, 0.4, 0.5};
        const double c1 = 0.7, c2 = -1.3;
        const Sym2 mc{c1 * m1.m11 + c2 * m2.m11, c1 * m1.m12 + c2 * m2.m12, c1 * m1.m22 + c2 * m2.m22};
        const auto v1 = duhamel_eval(bump_field(m1, a), x, 1.0).value;
        const auto v2 = duhamel_eval(bump_field(m2, a), x, 1.0).value;
        const auto vc = duhamel_eval(bump_field(mc, a), x, 1.0).value;
        const Vec2 lin{c1 * v1[0] + c2 * v2[0], c1 * v1[1] + c2 * v2[1]};
        CHECK(vec_dist(vc, lin) <= 1e-12);
    }
}

TEST_CASE("duhamel approaches the far-field tensor contraction", "[verify]") {
    // Far from the support the time-integrated kernel is essentially frakF.
    const auto w = bump_field({1.0, 0.3, -0.5});
    const Point2 x{12.0, 5.0};
    const auto v = duhamel_eval(w, x, 0.5);
    const Vec2 far = contract(fundamental_tensor(x), w.integral(0.5));
    const double r3 = std::pow(x.norm(), 3);
    CHECK(r3 * vec_dist(v.value, far) <= 1e-3 * r3 * std::hypot(far[0], far[1]));
}

TEST_CASE("duhamel residual column decreases for both time exponents", "[verify][slow]") {
    for (double a : {0.0, 0.7}) {
        CAPTURE(a);
        const auto tab = duhamel_asymptotics_check(bump_field({1.0, 0.3, -0.5}, a), 1.0, {4, 8, 16}, 8);
        REQUIRE(tab.rows.size() == 3);
        CHECK(tab.strictly_decreasing);
        CHECK(tab.final_ratio <= 0.05);
        for (const auto& r : tab.rows) CHECK(r.error_estimate < 1e-3 * tab.scale);
    }
}

TEST_CASE("gaussian field gives a decreasing residual column", "[verify]") {
    SyntheticTensorField w;
    w.profile = SpatialProfile::Gaussian;
    w.width = 0.25;
    w.matrix = {0.4, 0.3, -0.5};
    const auto tab = duhamel_asymptotics_check(w, 1.0, {4, 8, 16});
    CHECK(tab.strictly_decreasing);
    CHECK(tab.final_ratio <= 0.05);
}

TEST_CASE("identity matrix contracts to zero", "[verify]") {
    const auto w = bump_field({1.0, 0.0, 1.0});
    for (double th = 0.1; th < 2 * kPi; th += 0.7) {
        const Point2 x{5.0 * std::cos(th), 5.0 * std::sin(th)};
        const Vec2 far = contract(fundamental_tensor(x), w.integral(1.0));
        CHECK(std::hypot(far[0], far[1]) <= 1e-12);
    }
    const auto tab = duhamel_asymptotics_check(w, 1.0, {4, 8, 16}, 8);
    CHECK(tab.scale <= 1e-12);
    // The whole signal is the residual, and it is at quadrature level.
    for (const auto& r : tab.rows) CHECK(r.residual <= 1e-12 * std::pow(r.R, 3));
}

TEST_CASE("duhamel table follows parabolic rescaling", "[verify][slow]") {
    // w_l(y,s) = w(y/l, s/l^2) gives L(w_l)(l x, l^2 t) = l L(w)(x,t); with the
    // |x|^3 weight the table scales by l^4.
    const double l = 2.0;
    for (double a : {0.0, 0.7}) {
        CAPTURE(a);
        const auto w = bump_field({0.4, 0.3, -0.5}, a);
        auto wl = w;
        wl.width = l * w.width;
        wl.time_scale = l * l * w.time_scale;
        const auto t1 = duhamel_asymptotics_check(w, 1.0, {4, 8}, 8);
        const auto t2 = duhamel_asymptotics_check(wl, l * l, {4 * l, 8 * l}, 8);
        CHECK_THAT(t2.scale / t1.scale, WithinRel(std::pow(l, 4), 1e-12));
        for (std::size_t i = 0; i < 2; ++i)
            CHECK_THAT(t2.rows[i].residual / t1.rows[i].residual, WithinRel(std::pow(l, 4), 1e-6));
    }
}

TEST_CASE("heat generators admit their cases", "[verify]") {
    HeatGenerator g;
    CHECK(g.admits(HeatCase::I));
    CHECK(g.admits(HeatCase::II));
    CHECK(g.admits(HeatCase::III));
    g.field = HeatField::GradientDecay;
    CHECK_FALSE(g.admits(HeatCase::I));
    CHECK(g.admits(HeatCase::II));
    g.field = HeatField::LaplacianDecay;
    CHECK_FALSE(g.admits(HeatCase::I));
    CHECK_FALSE(g.admits(HeatCase::II));
    CHECK(g.admits(HeatCase::III));
    g.field = HeatField::CubicTail;
    CHECK(g.boundary());
    CHECK(g.admits(HeatCase::I));
    CHECK_THROWS_AS(heat_tail_check({HeatField::GradientDecay}, HeatCase::I, 1.0, {4, 8}), DomainError);
    CHECK_THROWS_AS(heat_eval({}, {1.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("heat quadrature reproduces the Gaussian closed form", "[verify]") {
    // e^{t Delta} exp(-|x|^2/w^2) = w^2/(w^2+4t) exp(-|x|^2/(w^2+4t))
    HeatGenerator g;
    g.width = 1.5;
    for (double t : {0.01, 0.3, 2.0})
        for (Point2 x : {Point2{0.0, 0.0}, Point2{1.0, -2.0}, Point2{4.0, 3.0}}) {
            const double s = g.width * g.width + 4 * t;
            const double e = g.width * g.width / s * std::exp(-x.norm2() / s);
            const auto v = heat_eval(g, x, t);
            CHECK_THAT(v.value[0], WithinAbs(e, 1e-10));
            CHECK_THAT(v.value[1], WithinAbs(0.5 * e, 1e-10));
        }
}

TEST_CASE("heat quadrature agrees with the spectral multiplier", "[verify]") {
    HeatGenerator g;
    const int n = 128;
    const double box = 16.0, t = 0.5;
    GridVectorField u(n, box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const Vec2 v = g(u.u1.point(ix, iy));
            u.u1.at(ix, iy) = v[0];
            u.u2.at(ix, iy) = v[1];
        }
    const auto h = heat_multiplier(u, t);
    double worst = 0.0;
    for (int iy = 0; iy < n; iy += 7)
        for (int ix = 0; ix < n; ix += 5) {
            const auto q = heat_eval(g, u.u1.point(ix, iy), t).value;
            worst = std::fmax(worst, std::hypot(q[0] - h.u1.at(ix, iy), q[1] - h.u2.at(ix, iy)));
        }
    CHECK(worst <= 1e-8);
}

TEST_CASE("gaussian heat tail decreases", "[verify]") {
    const auto tab = heat_tail_check({HeatField::Gaussian}, HeatCase::I, 1.0, {4, 8, 16}, 4, 3);
    CHECK(tab.finite);
    CHECK(tab.strictly_decreasing);
    CHECK(tab.pass);
}

TEST_CASE("cases ii and iii decrease", "[verify]") {
    const auto ii = heat_tail_check({HeatField::GradientDecay}, HeatCase::II, 1.0, {4, 8, 16}, 4, 3);
    CHECK(ii.strictly_decreasing);
    CHECK(ii.pass);
    const auto iii = heat_tail_check({HeatField::LaplacianDecay}, HeatCase::III, 1.0, {4, 8, 16}, 4, 3);
    CHECK(iii.strictly_decreasing);
    CHECK(iii.pass);
}

TEST_CASE("cubic tail stays bounded and non-vanishing", "[verify]") {
    const auto tab = heat_tail_check({HeatField::CubicTail}, HeatCase::I, 1.0, {4, 8, 16}, 4, 3);
    CHECK(tab.finite);
    CHECK(tab.non_vanishing);
    CHECK_FALSE(tab.strictly_decreasing);
    CHECK(tab.pass);
    for (const auto& r : tab.rows) CHECK(r.value < 10.0);
}

TEST_CASE("case ii bound grows at most cubically in T", "[verify]") {
    const auto s = heat_T_scaling({HeatField::GradientDecay}, HeatCase::II, 0.5, 2, {4, 8, 16});
    REQUIRE(s.T.size() == 3);
    CHECK(s.T[2] == 2.0);
    REQUIRE(s.slopes.size() == 2);
    CHECK(s.max_slope <= 3.0);
    CHECK(s.pass);
    CHECK(std::is_sorted(s.bound.begin(), s.bound.end()));
}

TEST_CASE("weighted norms are finite and homogeneous", "[verify]") {
    const auto& r = long_run();
    const auto w1 = weighted_norm_monitor(r.datum.u, 0.0);
    CHECK(std::isfinite(w1.sup_phi_u));
    CHECK(std::isfinite(w1.sup_psi_grad));
    CHECK(w1.sup_phi_u > 0.0);
    GridVectorField u2 = r.datum.u;
    for (auto* c : {&u2.u1, &u2.u2})
        for (double& v : c->values) v *= 2.0;
    const auto w2 = weighted_norm_monitor(u2, 0.0);
    CHECK_THAT(w2.sup_phi_u, WithinRel(2.0 * w1.sup_phi_u, 1e-14));
    CHECK_THAT(w2.sup_psi_grad, WithinRel(2.0 * w1.sup_psi_grad, 1e-14));
}

TEST_CASE("weighted norms of a constant field", "[verify]") {
    // Constant field: phi peaks at the box corner, gradient vanishes.
    GridVectorField u(64, 8.0);
    for (double& v : u.u1.values) v = 1.0;
    const auto w = weighted_norm_monitor(u, 0.0);
    const double rmax = std::hypot(4.0, 4.0);
    CHECK_THAT(w.sup_phi_u, WithinRel((1 + rmax) * std::sqrt(std::log(std::exp(1.0) + rmax)), 1e-14));
    CHECK(w.sup_psi_grad <= 1e-12);
}

TEST_CASE("t^(1/8) weighted velocity norm stays bounded on (0,1]", "[verify]") {
    const auto& r = long_run();
    const double w0 = weighted_norm_monitor(r.datum.u, 0.0).sup_phi_u;
    for (const auto& s : r.traj.snapshots) {
        if (s.time <= 0.0 || s.time > 1.0) continue;
        const auto w = weighted_norm_monitor(velocity_from_vorticity(*s.omega), s.time);
        CHECK(std::pow(s.time, 0.125) * w.sup_phi_u <= w0);
    }
}

TEST_CASE("H^-1 norm of a single mode", "[verify]") {
    const int n = 64;
    const double box = 2 * kPi;
    GridVectorField u(n, box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) u.u1.at(ix, iy) = std::cos(3 * u.u1.coord(ix));
    // int cos^2 = 2 pi^2 on the box, divided by |k|^2 = 9
    CHECK_THAT(hdot_minus1_norm2(u), WithinRel(2 * kPi * kPi / 9.0, 1e-13));
}

TEST_CASE("L2 decay track on a long run", "[verify][slow]") {
    const auto& r = long_run();
    // The solver starts from the dealiased datum.
    const auto u0 = velocity_from_vorticity(*r.traj.snapshots.front().omega);
    const auto res = l2_decay_track(r.traj, u0);
    REQUIRE(res.rows.size() == r.traj.snapshots.size());
    CHECK(res.energy_non_increasing);
    CHECK(res.heat_bound_holds);
    CHECK(res.difference_exponent <= -1.5);
    CHECK(res.energy_exponent < 0.0);
    const double expect_C = energy(u0) + hdot_minus1_norm2(u0) / (2 * std::exp(1.0));
    CHECK_THAT(res.C, WithinRel(expect_C, 1e-12));
    CHECK(res.rows.front().difference <= 1e-12 * res.rows.front().energy);
    CHECK_THROWS_AS(l2_decay_track(Trajectory{}, u0), DomainError);
}
