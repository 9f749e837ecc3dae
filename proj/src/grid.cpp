#include "hexns/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>

#include "hexns/error.hpp"

namespace hexns {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

void require_valid_grid(int n, double box) {
    if (n < 4 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of 2");
    if (!(box > 0.0) || !std::isfinite(box)) throw DomainError("box must be positive");
}

GridScalarField::GridScalarField(int n_, double box_) : n(n_), box(box_) {
    require_valid_grid(n_, box_);
    values.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

double GridScalarField::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * h() * h();
}

double GridScalarField::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double GridScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

double GridVectorField::max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) m = std::max(m, std::hypot(u1.values[i], u2.values[i]));
    return m;
}

double grid_inner(const GridScalarField& f, const GridScalarField& g) {
    if (!f.same_grid(g)) throw DomainError("fields live on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.values[i] * g.values[i];
    return s * f.h() * f.h();
}

Spectral::Spectral(int n, double box) : n_(n), box_(box), k0_(2.0 * std::numbers::pi / box) {
    require_valid_grid(n, box);
    real_buf_ = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    auto* c = fftw_alloc_complex(spectrum_size());
    complex_buf_ = c;
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_2d(n, n, real_buf_, c, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_2d(n, n, c, real_buf_, FFTW_ESTIMATE);
}

Spectral::~Spectral() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_buf_);
    fftw_free(complex_buf_);
}

bool Spectral::dealias_keep(int iy, int ikx) const {
    const int jy = iy <= n_ / 2 ? iy : n_ - iy;
    return 3 * ikx < n_ && 3 * jy < n_;
}

void Spectral::forward(const std::vector<double>& in, Spectrum& out) {
    std::copy(in.begin(), in.end(), real_buf_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    const auto* c = static_cast<const fftw_complex*>(complex_buf_);
    out.resize(spectrum_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {c[i][0], c[i][1]};
}

void Spectral::inverse(const Spectrum& in, std::vector<double>& out) {
    auto* c = static_cast<fftw_complex*>(complex_buf_);
    for (std::size_t i = 0; i < in.size(); ++i) {
        c[i][0] = in[i].real();
        c[i][1] = in[i].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    out.resize(static_cast<std::size_t>(n_) * n_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = real_buf_[i] * scale;
}

Spectrum Spectral::forward(const GridScalarField& f) {
    if (f.n != n_ || f.box != box_) throw DomainError("field does not match transform grid");
    Spectrum s;
    forward(f.values, s);
    return s;
}

GridScalarField Spectral::inverse_field(const Spectrum& s) {
    GridScalarField f(n_, box_);
    inverse(s, f.values);
    return f;
}

void Spectral::d1(const Spectrum& in, Spectrum& out) const {
    out.resize(in.size());
    const int m = nk();
    for (int iy = 0; iy < n_; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            out[i] = nyquist_x(ix) ? 0.0 : std::complex<double>(0.0, kx(ix)) * in[i];
        }
}

void Spectral::d2(const Spectrum& in, Spectrum& out) const {
    out.resize(in.size());
    const int m = nk();
    for (int iy = 0; iy < n_; ++iy) {
        const double k = nyquist_y(iy) ? 0.0 : ky(iy);
        for (int ix = 0; ix < m; ++ix) {
            const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
            out[i] = std::complex<double>(0.0, k) * in[i];
        }
    }
}

Spectral& spectral_for(int n, double box) {
    thread_local std::map<std::pair<int, double>, std::unique_ptr<Spectral>> cache;
    auto& slot = cache[{n, box}];
    if (!slot) slot = std::make_unique<Spectral>(n, box);
    return *slot;
}

GridScalarField derivative(const GridScalarField& f, int axis) {
    Spectral& sp = spectral_for(f.n, f.box);
    Spectrum s = sp.forward(f), ds;
    if (axis == 0) sp.d1(s, ds);
    else sp.d2(s, ds);
    return sp.inverse_field(ds);
}

GridScalarField divergence(const GridVectorField& u) {
    Spectral& sp = spectral_for(u.n(), u.box());
    Spectrum a = sp.forward(u.u1), b = sp.forward(u.u2), da, db;
    sp.d1(a, da);
    sp.d2(b, db);
    for (std::size_t i = 0; i < da.size(); ++i) da[i] += db[i];
    return sp.inverse_field(da);
}

GridScalarField curl(const GridVectorField& u) {
    Spectral& sp = spectral_for(u.n(), u.box());
    Spectrum a = sp.forward(u.u1), b = sp.forward(u.u2), d2a, d1b;
    sp.d2(a, d2a);
    sp.d1(b, d1b);
    for (std::size_t i = 0; i < d1b.size(); ++i) d1b[i] -= d2a[i];
    return sp.inverse_field(d1b);
}

GridScalarField heat_multiplier(const GridScalarField& f, double t) {
    if (!(t >= 0.0)) throw DomainError("heat time must be nonnegative");
    Spectral& sp = spectral_for(f.n, f.box);
    Spectrum s = sp.forward(f);
    const int m = sp.nk();
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            const double k2 = sp.kx(ix) * sp.kx(ix) + sp.ky(iy) * sp.ky(iy);
            s[static_cast<std::size_t>(iy) * m + ix] *= std::exp(-k2 * t);
        }
    return sp.inverse_field(s);
}

GridVectorField heat_multiplier(const GridVectorField& u, double t) {
    GridVectorField out;
    out.u1 = heat_multiplier(u.u1, t);
    out.u2 = heat_multiplier(u.u2, t);
    return out;
}

}  // namespace hexns
