#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hexns/grid.hpp"
#include "hexns/types.hpp"

namespace hexns {

struct BumpSpec {
    Point2 center;
    double radius = 1.0;
    double amplitude = 1.0;

    bool operator==(const BumpSpec&) const = default;
};

enum class SymmetryClass { Generic, Radial, Symmetric, HalfSymmetricI, HalfSymmetricII };

std::string to_string(SymmetryClass c);
SymmetryClass symmetry_class_from_string(const std::string& s);

// amplitude * exp(1 - 1/(1 - s^2)) for s = |x - c| / r < 1, zero outside.
double bump_profile(const BumpSpec& b, Point2 x);

// Bump disks must sit strictly inside [-box/4, box/4]^2.
void require_central_quarter(const std::vector<BumpSpec>& bumps, double box);

GridScalarField stream_function(int n, double box, const std::vector<BumpSpec>& bumps);

// Projection of psi onto the sign character of the class:
//   symmetric:          psi odd in x1, odd in x2, psi(x2,x1) = -psi(x1,x2)
//   half_symmetric_i:   psi odd in x1 and in x2 (u1 odd in x1, even in x2)
//   half_symmetric_ii:  psi(x2,x1) = -psi(x1,x2)  (u1(x1,x2) = u2(x2,x1))
// Generic and radial fields are returned unchanged.
GridScalarField symmetrize(const GridScalarField& psi, SymmetryClass c);

// u = grad^perp psi.  Rejects psi that is not negligible near the box edge.
GridVectorField stream_to_velocity(const GridScalarField& psi);

// Seeded bump family: every disk lies inside |x| < support_radius
// (box/16 when zero, so that the box is 8 support diameters wide).
std::vector<BumpSpec> random_bumps(double box, std::uint64_t seed, int count = 3,
                                   double support_radius = 0.0);

struct Datum {
    GridScalarField psi;
    GridVectorField u;
    GridScalarField omega;
};

// Radial class uses a single bump at the origin (radius and amplitude of
// the first bump, or defaults).  Other classes symmetrize the bump sum.
Datum make_datum_full(int n, double box, const std::vector<BumpSpec>& bumps, SymmetryClass c,
                      std::uint64_t seed);
GridVectorField make_datum(int n, double box, const std::vector<BumpSpec>& bumps, SymmetryClass c,
                           std::uint64_t seed);

// Largest violation of the class identities on the grid, relative to max|u|.
double class_identity_defect(const GridVectorField& u, SymmetryClass c);

struct NonsymmetryResult {
    bool nonsymmetric = false;
    Sym2 matrix;  // int u0 (x) u0
};
NonsymmetryResult nonsymmetry_check(const GridVectorField& u0);

struct Kappa0 {
    double value = 0.0;
    double unsigned_scale = 0.0;  // same sums with |.| on the integrands
};
Kappa0 kappa0_full(const GridVectorField& u0);
double kappa0(const GridVectorField& u0);

// First vorticity moments int y_j omega dy.  The weight y_j is rolled off
// by a smooth window (1 out to 0.7 of the half width, 0 beyond 0.95 of it)
// so that the periodic wrap of y_j does not pick up grid noise.
// For fields supported inside that plateau this is the plain moment.
Vec2 first_moments(const GridScalarField& omega);

// Largest |x| at which |omega| exceeds rel * max|omega|.
double effective_support_radius(const GridScalarField& omega, double rel = 1e-13);

}  // namespace hexns
