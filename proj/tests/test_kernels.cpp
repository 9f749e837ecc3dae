#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hexns/error.hpp"
#include "hexns/kernels.hpp"

using namespace hexns;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

Point2 random_point(std::mt19937_64& rng, double lo = 0.2, double hi = 4.0) {
    std::uniform_real_distribution<double> r(lo, hi), th(0.0, 2.0 * kPi);
    const double rr = r(rng), tt = th(rng);
    return {rr * std::cos(tt), rr * std::sin(tt)};
}

// Third derivative of E2 by central differences of the analytic second
// derivatives d_h d_k E2 = -(1/2pi) (delta_hk r^2 - 2 x_h x_k) / r^4.
double e2_second(Point2 x, int h, int k) {
    const double r2 = x.norm2();
    const double xh = h == 0 ? x.x1 : x.x2, xk = k == 0 ? x.x1 : x.x2;
    return -((h == k ? r2 : 0.0) - 2.0 * xh * xk) / (2.0 * kPi * r2 * r2);
}

double fd_third(Point2 x, int j, int h, int k) {
    const double eps = 1e-4;
    auto shift = [&](double s) { return j == 0 ? Point2{x.x1 + s, x.x2} : Point2{x.x1, x.x2 + s}; };
    return (-e2_second(shift(2 * eps), h, k) + 8 * e2_second(shift(eps), h, k) -
            8 * e2_second(shift(-eps), h, k) + e2_second(shift(-2 * eps), h, k)) /
           (12 * eps);
}

double rel_diff(const Tensor3& a, const Tensor3& b) {
    return (a - b).max_abs() / std::max(a.max_abs(), b.max_abs());
}

}  // namespace

TEST_CASE("heat kernel values", "[kernels]") {
    CHECK_THAT(heat_kernel({0, 0}, 1.0), WithinRel(1.0 / (4 * kPi), 1e-15));
    CHECK_THAT(heat_kernel({0, 0}, 1.0), WithinAbs(0.0795775, 1e-7));
    CHECK_THAT(heat_kernel({2, 0}, 1.0), WithinRel(std::exp(-1.0) / (4 * kPi), 1e-15));
    CHECK_THROWS_AS(heat_kernel({1, 0}, 0.0), DomainError);
    CHECK_THROWS_AS(heat_kernel({1, 0}, -1.0), DomainError);
}

TEST_CASE("heat kernel grid quadrature is normalised", "[kernels]") {
    const int n = 400;
    const double box = 40.0, h = box / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += heat_kernel({-box / 2 + i * h, -box / 2 + j * h}, 1.0);
    CHECK_THAT(s * h * h, WithinAbs(1.0, 1e-12));
}

TEST_CASE("fundamental tensor", "[kernels]") {
    CHECK_THAT(fundamental_tensor({1, 0})(0, 0, 0), WithinRel(-1.0 / kPi, 1e-15));
    CHECK_THROWS_AS(fundamental_tensor({0, 0}), SingularityError);
    CHECK_THROWS_AS(fundamental_tensor({1e-13, 0}), SingularityError);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Point2 x = random_point(rng);
        const Tensor3 f = fundamental_tensor(x);
        CHECK(rel_diff(fundamental_tensor(2.5 * x), std::pow(2.5, -3) * f) < 1e-14);
        CHECK(rel_diff(fundamental_tensor(-x), -1.0 * f) < 1e-15);
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h)
                for (int k = 0; k < 2; ++k) {
                    CHECK(f(j, h, k) == f(h, j, k));
                    CHECK(f(j, h, k) == f(j, k, h));
                    CHECK_THAT(f(j, h, k), WithinAbs(fd_third(x, j, h, k), 1e-8 * f.max_abs()));
                }
    }
}

TEST_CASE("closed-form F2 matches the time quadrature", "[kernels]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> logt(-3.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Point2 x = random_point(rng, 0.01, 5.0);
        const double t = std::pow(10.0, logt(rng));
        const Tensor3 closed = oseen_kernel_nonlocal(x, t);
        const KernelQuadrature q = oseen_kernel_nonlocal_quadrature(x, t);
        INFO("x=(" << x.x1 << "," << x.x2 << ") t=" << t);
        CHECK(rel_diff(closed, q.value) < 1e-11);
    }
}

TEST_CASE("F1 is the heat kernel gradient", "[kernels]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Point2 x = random_point(rng);
        const double t = 0.7;
        const Tensor3 f1 = oseen_kernel_local(x, t);
        const double eps = 1e-5;
        const double d1 = (heat_kernel({x.x1 + eps, x.x2}, t) - heat_kernel({x.x1 - eps, x.x2}, t)) / (2 * eps);
        const double d2 = (heat_kernel({x.x1, x.x2 + eps}, t) - heat_kernel({x.x1, x.x2 - eps}, t)) / (2 * eps);
        CHECK_THAT(f1(0, 0, 0), WithinAbs(d1, 1e-9));
        CHECK_THAT(f1(1, 0, 1), WithinAbs(d1, 1e-9));
        CHECK_THAT(f1(0, 1, 0), WithinAbs(d2, 1e-9));
        CHECK_THAT(f1(1, 1, 1), WithinAbs(d2, 1e-9));
        CHECK(f1(0, 0, 1) == 0.0);
        CHECK(f1(1, 0, 0) == 0.0);
    }
}

TEST_CASE("Oseen kernel scaling, oddness and symmetry", "[kernels]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> logt(-2.0, 1.0);
    double sup_scaled = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Point2 x = random_point(rng, 0.05, 6.0);
        const double t = std::pow(10.0, logt(rng));
        const Tensor3 f = oseen_kernel(x, t);
        const Tensor3 f1 = std::pow(t, -1.5) * oseen_kernel((1.0 / std::sqrt(t)) * x, 1.0);
        CHECK((f - f1).frobenius() <= 1e-9 * f.frobenius());
        CHECK(rel_diff(oseen_kernel(-x, t), -1.0 * f) < 1e-15);
        const Tensor3 f2 = oseen_kernel_nonlocal(x, t);
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h)
                for (int k = 0; k < 2; ++k) {
                    CHECK(f2(j, h, k) == f2(j, k, h));
                    CHECK(f2(j, h, k) == f2(h, j, k));
                }
        sup_scaled = std::max(sup_scaled, std::pow(x.norm(), 3) * f.max_abs());
    }
    CHECK(std::isfinite(sup_scaled));
}

TEST_CASE("|x|^3 |F| is bounded and the bound is stable", "[kernels]") {
    auto sup_on = [](int m) {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const double xi = std::pow(10.0, -2.0 + 4.0 * i / (m - 1));
                const double th = 2 * kPi * j / m;
                const Point2 x{xi * std::cos(th), xi * std::sin(th)};
                s = std::max(s, std::pow(xi, 3) * oseen_kernel(x, 1.0).max_abs());
            }
        return s;
    };
    const double s1 = sup_on(100), s2 = sup_on(200);
    CHECK(std::isfinite(s1));
    CHECK_THAT(s2, WithinRel(s1, 1e-2));
}

TEST_CASE("ball moments of F vanish", "[kernels]") {
    for (double R : {0.5, 1.0, 5.0})
        for (double t : {0.1, 1.0}) {
            const MomentResult m = kernel_moment(R, t);
            INFO("R=" << R << " t=" << t);
            CHECK(m.value.max_abs() <= 1e-10);
            CHECK(m.level_difference < 1e-10);
        }
    const double phi = 0.37;
    const MomentResult h1 = half_ball_moment(1.0, 0.1, phi);
    const MomentResult h2 = half_ball_moment(1.0, 0.1, phi + kPi);
    CHECK(h1.value.max_abs() > 1e-3);
    CHECK((h1.value + h2.value).max_abs() < 1e-10);
}

TEST_CASE("remainder depends only on x / sqrt(t)", "[kernels]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Point2 x = random_point(rng, 0.1, 3.0);
        const double t = 0.4;
        const Tensor3 p = kernel_remainder(x, t);
        CHECK(rel_diff(kernel_remainder(3.0 * x, 9.0 * t), p) < 1e-9);
        CHECK((kernel_remainder(0.5 * x, 0.25 * t) - p).max_abs() < 1e-10);
    }
}

TEST_CASE("remainder agrees with F minus the fundamental tensor", "[kernels]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Point2 x = random_point(rng, 0.3, 2.0);
        const double t = 1.0;
        const Tensor3 direct = std::pow(x.norm(), 3) * (oseen_kernel(x, t) - fundamental_tensor(x));
        CHECK((kernel_remainder(x, t) - direct).max_abs() < 1e-12);
    }
}

TEST_CASE("remainder envelope decays after the transient", "[kernels]") {
    const EnvelopeFit fit = fit_remainder_envelope(1.0, 8.0, 40);
    CHECK(fit.c > 0.0);
    for (std::size_t i = 0; i < fit.xi.size(); ++i)
        CHECK(fit.magnitude[i] <= fit.C * std::exp(-fit.c * fit.xi[i] * fit.xi[i]) * (1 + 1e-12));
    // monotone once past the peak
    std::size_t peak = 0;
    for (std::size_t i = 1; i < fit.magnitude.size(); ++i)
        if (fit.magnitude[i] > fit.magnitude[peak]) peak = i;
    for (std::size_t i = peak + 1; i < fit.magnitude.size(); ++i)
        CHECK(fit.magnitude[i] < fit.magnitude[i - 1]);
}
