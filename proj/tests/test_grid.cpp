#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hexns/error.hpp"
#include "hexns/grid.hpp"

using namespace hexns;

TEST_CASE("grid geometry", "[grid]") {
    GridScalarField f(8, 4.0);
    CHECK(f.h() == 0.5);
    CHECK(f.coord(0) == -2.0);
    CHECK(f.coord(4) == 0.0);
    CHECK_THROWS_AS(GridScalarField(100, 1.0), DomainError);
    CHECK_THROWS_AS(GridScalarField(64, -1.0), DomainError);
}

TEST_CASE("spectral derivative of a Gaussian", "[grid]") {
    const int n = 128;
    const double box = 20.0;
    GridScalarField f(n, box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) f.at(ix, iy) = std::exp(-f.point(ix, iy).norm2());
    const GridScalarField d1 = derivative(f, 0), d2 = derivative(f, 1);
    double e = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const Point2 x = f.point(ix, iy);
            e = std::max(e, std::fabs(d1.at(ix, iy) + 2 * x.x1 * f.at(ix, iy)));
            e = std::max(e, std::fabs(d2.at(ix, iy) + 2 * x.x2 * f.at(ix, iy)));
        }
    CHECK(e < 1e-12);
}

TEST_CASE("heat multiplier reproduces Gaussian spreading", "[grid]") {
    const int n = 128;
    const double box = 40.0, t = 0.7;
    GridScalarField f(n, box);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) f.at(ix, iy) = std::exp(-f.point(ix, iy).norm2());
    const GridScalarField g = heat_multiplier(f, t);
    double e = 0.0;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double r2 = f.point(ix, iy).norm2();
            const double exact = std::exp(-r2 / (1 + 4 * t)) / (1 + 4 * t);
            e = std::max(e, std::fabs(g.at(ix, iy) - exact));
        }
    CHECK(e < 1e-12);
}
