#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "hexns/types.hpp"

namespace hexns {

// Periodic n x n samples on [-box/2, box/2)^2.  values[iy * n + ix] is the
// sample at x = (-box/2 + ix h, -box/2 + iy h).
struct GridScalarField {
    int n = 0;
    double box = 0.0;
    std::vector<double> values;

    GridScalarField() = default;
    GridScalarField(int n_, double box_);

    double h() const { return box / n; }
    double coord(int i) const { return -0.5 * box + i * h(); }
    Point2 point(int ix, int iy) const { return {coord(ix), coord(iy)}; }
    double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * n + ix]; }
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * n + ix]; }
    std::size_t size() const { return values.size(); }

    double integral() const;
    double mean() const;
    double max_abs() const;
    bool same_grid(const GridScalarField& o) const { return n == o.n && box == o.box; }
};

struct GridVectorField {
    GridScalarField u1;
    GridScalarField u2;

    GridVectorField() = default;
    GridVectorField(int n, double box) : u1(n, box), u2(n, box) {}
    int n() const { return u1.n; }
    double box() const { return u1.box; }
    double max_abs() const;
};

// h^2 sum f g
double grid_inner(const GridScalarField& f, const GridScalarField& g);

void require_valid_grid(int n, double box);

using Spectrum = std::vector<std::complex<double>>;

// Real-to-complex transforms on one grid.  Spectrum layout is ky-major:
// index iy * (n/2 + 1) + ikx.  Instances own FFTW buffers and are not
// safe for concurrent use; spectral_for() returns a per-thread instance.
class Spectral {
public:
    Spectral(int n, double box);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    int n() const { return n_; }
    double box() const { return box_; }
    int nk() const { return n_ / 2 + 1; }
    std::size_t spectrum_size() const { return static_cast<std::size_t>(n_) * nk(); }

    // Signed wavenumbers; index n/2 is the Nyquist mode.
    double kx(int ikx) const { return k0_ * ikx; }
    double ky(int iy) const { return k0_ * (iy <= n_ / 2 ? iy : iy - n_); }
    bool nyquist_x(int ikx) const { return 2 * ikx == n_; }
    bool nyquist_y(int iy) const { return 2 * iy == n_; }
    // 2/3-rule: keep modes with |index| < n/3 in both directions.
    bool dealias_keep(int iy, int ikx) const;
    // Weight of a half-spectrum entry in a full-spectrum sum.
    double hermitian_weight(int ikx) const { return (ikx == 0 || nyquist_x(ikx)) ? 1.0 : 2.0; }

    // Unnormalised forward transform.
    void forward(const std::vector<double>& in, Spectrum& out);
    // Inverse including the 1/n^2 normalisation.
    void inverse(const Spectrum& in, std::vector<double>& out);

    Spectrum forward(const GridScalarField& f);
    GridScalarField inverse_field(const Spectrum& s);

    // Spectral derivatives; Nyquist components are zeroed.
    void d1(const Spectrum& in, Spectrum& out) const;
    void d2(const Spectrum& in, Spectrum& out) const;

private:
    int n_;
    double box_;
    double k0_;
    double* real_buf_;
    void* complex_buf_;
    void* plan_fwd_;
    void* plan_inv_;
};

Spectral& spectral_for(int n, double box);

// Spectral derivative helpers on physical fields.
GridScalarField derivative(const GridScalarField& f, int axis);
GridScalarField divergence(const GridVectorField& u);
GridScalarField curl(const GridVectorField& u);
// e^{t Delta} applied mode by mode.
GridScalarField heat_multiplier(const GridScalarField& f, double t);
GridVectorField heat_multiplier(const GridVectorField& u, double t);

}  // namespace hexns
