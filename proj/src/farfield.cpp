#include "hexns/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "hexns/error.hpp"
#include "hexns/initdata.hpp"
#include "hexns/parallel.hpp"

namespace hexns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

double circle_distance(double a, double b, double period) {
    return std::fabs(std::remainder(a - b, period));
}

// Trigonometric interpolant of equispaced samples on [0, 2 pi).
class TrigInterpolant {
public:
    explicit TrigInterpolant(const std::vector<double>& v) : m_(static_cast<int>(v.size())) {
        const int kmax = m_ / 2;
        c_.resize(kmax + 1);
        for (int k = 0; k <= kmax; ++k) {
            std::complex<double> s = 0.0;
            for (int i = 0; i < m_; ++i) s += v[i] * std::polar(1.0, -kTwoPi * k * i / m_);
            c_[k] = s / static_cast<double>(m_);
        }
    }

    double operator()(double th) const {
        const int kmax = m_ / 2;
        double r = c_[0].real();
        for (int k = 1; k <= kmax; ++k) {
            const double w = (2 * k == m_) ? 1.0 : 2.0;
            r += w * (c_[k] * std::polar(1.0, k * th)).real();
        }
        return r;
    }

    double harmonic_amplitude(int k) const {
        if (k == 0) return std::abs(c_[0]);
        return (2 * k == m_ ? 1.0 : 2.0) * std::abs(c_[k]);
    }

private:
    int m_;
    std::vector<std::complex<double>> c_;
};

}  // namespace

std::string to_string(Component c) {
    switch (c) {
        case Component::U1: return "u1";
        case Component::U2: return "u2";
        case Component::Speed: return "speed";
    }
    return "u2";
}

Component component_from_string(const std::string& s) {
    if (s == "u1") return Component::U1;
    if (s == "u2") return Component::U2;
    if (s == "speed") return Component::Speed;
    throw DomainError("unknown component '" + s + "' (expected u1, u2 or speed)");
}

BiotSavart::BiotSavart(const GridScalarField& omega, double support_rel) {
    support_ = effective_support_radius(omega, support_rel);
    const double h2 = omega.h() * omega.h();
    for (int iy = 0; iy < omega.n; ++iy)
        for (int ix = 0; ix < omega.n; ++ix) {
            const double w = omega.at(ix, iy);
            if (w == 0.0) continue;
            const Point2 y = omega.point(ix, iy);
            if (y.norm() > support_) {
                dropped_mass_ += std::fabs(w) * h2;
                continue;
            }
            y1_.push_back(y.x1);
            y2_.push_back(y.x2);
            w_.push_back(w * h2);
            abs_mass_ += std::fabs(w) * h2;
        }
}

double BiotSavart::noise_level(double R) const {
    return std::numeric_limits<double>::epsilon() * abs_mass_ / (kTwoPi * R);
}

Vec2 BiotSavart::operator()(Point2 x) const {
    if (!(x.norm() > min_probe_radius()))
        throw DomainError(fmt::format("probe |x| = {:.6g} is inside 1.5x the vorticity support radius {:.6g}",
                                      x.norm(), support_));
    double s1 = 0.0, s2 = 0.0;
    const std::size_t count = w_.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double d1 = x.x1 - y1_[i], d2 = x.x2 - y2_[i];
        const double f = w_[i] / (d1 * d1 + d2 * d2);
        s1 -= d2 * f;
        s2 += d1 * f;
    }
    return {s1 / kTwoPi, s2 / kTwoPi};
}

Vec2 biot_savart_point(const GridScalarField& omega, Point2 x) { return BiotSavart(omega)(x); }

VelocityProfiles velocity_profiles(const BiotSavart& bs, double t, double R, int m) {
    if (m < 64) throw DomainError("angular profiles need at least 64 samples");
    if (!(R > bs.min_probe_radius()))
        throw DomainError(fmt::format("probe radius {:.6g} is inside 1.5x the vorticity support radius {:.6g}", R,
                                      bs.support_radius()));
    VelocityProfiles p;
    const double r3 = R * R * R;
    for (FarFieldProfile* f : {&p.u1, &p.u2, &p.speed}) {
        f->R = R;
        f->t = t;
        f->theta.resize(m);
        f->values.resize(m);
        f->noise_floor = r3 * bs.noise_level(R);
    }
    p.u1.component = Component::U1;
    p.u2.component = Component::U2;
    p.speed.component = Component::Speed;
    parallel_for(m, [&](std::size_t i) {
        const double th = kTwoPi * static_cast<double>(i) / m;
        const Vec2 u = bs({R * std::cos(th), R * std::sin(th)});
        p.u1.theta[i] = p.u2.theta[i] = p.speed.theta[i] = th;
        p.u1.values[i] = r3 * u[0];
        p.u2.values[i] = r3 * u[1];
        p.speed.values[i] = r3 * std::hypot(u[0], u[1]);
    });
    return p;
}

FarFieldProfile angular_profile(const GridScalarField& omega, double t, double R, int m, Component c) {
    const VelocityProfiles p = velocity_profiles(BiotSavart(omega), t, R, m);
    switch (c) {
        case Component::U1: return p.u1;
        case Component::U2: return p.u2;
        case Component::Speed: return p.speed;
    }
    return p.u2;
}

SinusoidFit fit_sinusoid(const FarFieldProfile& profile) {
    if (profile.component == Component::Speed) throw DomainError("sinusoid fits need the u1 or u2 component");
    const auto& v = profile.values;
    const int m = static_cast<int>(v.size());
    if (m < 64) throw DomainError("angular profiles need at least 64 samples");
    SinusoidFit fit;

    // Equispaced samples make the least-squares normal equations diagonal.
    double cs = 0.0, cc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * i / m;
        cs += v[i] * std::sin(3 * th);
        cc += v[i] * std::cos(3 * th);
    }
    cs *= 2.0 / m;
    cc *= 2.0 / m;
    fit.amplitude = std::hypot(cs, cc);
    fit.phase = wrap_2pi(std::atan2(cc, cs));
    double rss = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = v[i] - fit.amplitude * std::sin(3 * kTwoPi * i / m + fit.phase);
        rss += r * r;
    }
    fit.residual_rms = std::sqrt(rss / m);

    const TrigInterpolant trig(v);
    for (int k = 0; k <= 6; ++k) fit.harmonics[k] = trig.harmonic_amplitude(k);

    // Local minima of |v| over a window of one twelfth of a period of 3 theta.
    const int w = std::max(1, m / 36);
    const double dth = kTwoPi / m;
    auto at = [&](int i) { return std::fabs(v[((i % m) + m) % m]); };
    for (int i = 0; i < m; ++i) {
        bool is_min = true;
        for (int j = 1; j <= w && is_min; ++j)
            if (at(i - j) <= at(i) || at(i + j) < at(i)) is_min = false;
        if (!is_min) continue;
        const double vm = v[(i - 1 + m) % m], v0 = v[i], vp = v[(i + 1) % m];
        double th = i * dth;
        double lo = th - dth, hi = th + dth;
        bool bracket = false;
        if (vm * v0 <= 0.0) {
            hi = th;
            bracket = true;
        } else if (v0 * vp <= 0.0) {
            lo = th;
            bracket = true;
        }
        if (bracket) {
            // sign change: polish the root of the trigonometric interpolant
            const double flo = trig(lo), fhi = trig(hi);
            if (flo == 0.0) {
                th = lo;
            } else if (fhi == 0.0) {
                th = hi;
            } else if (flo * fhi < 0.0) {
                boost::uintmax_t iters = 100;
                const auto r = boost::math::tools::toms748_solve(
                    [&](double x) { return trig(x); }, lo, hi, flo, fhi,
                    boost::math::tools::eps_tolerance<double>(50), iters);
                th = 0.5 * (r.first + r.second);
            }
        } else {
            // touching minimum: vertex of the parabola through |v|
            const double am = std::fabs(vm), a0 = std::fabs(v0), ap = std::fabs(vp);
            const double den = am - 2 * a0 + ap;
            if (den > 0.0) th += 0.5 * dth * (am - ap) / den;
        }
        fit.minima.push_back(wrap_2pi(th));
    }
    std::sort(fit.minima.begin(), fit.minima.end());

    fit.conclusive = fit.amplitude > profile.noise_floor && fit.amplitude > 0.0;
    bool spaced = fit.minima.size() == 6;
    for (std::size_t k = 0; spaced && k < 6; ++k) {
        const double gap = wrap_2pi(fit.minima[(k + 1) % 6] - fit.minima[k]);
        if (std::fabs(gap - kPi / 3) > 0.05) spaced = false;
    }
    fit.hexagon_detected = fit.conclusive && fit.residual_rms <= fit.amplitude && spaced;
    return fit;
}

ComparisonRecord compare_to_prediction(const SinusoidFit& fit, const HexInvariant& inv, Component c) {
    if (!inv.defined()) throw DomainError("prediction undefined: z vanishes");
    if (c == Component::Speed) throw DomainError("phase comparison needs the u1 or u2 component");
    const HexGeometry& g = *inv.hexagon;
    ComparisonRecord rec;
    rec.component = c;
    rec.amplitude = fit.amplitude;
    rec.L = inv.L;
    rec.amplitude_error = std::fabs(fit.amplitude - inv.L) / inv.L;
    // u ~ -grad H: R^3 u2 -> -L sin(3 theta + alpha), R^3 u1 -> -L cos(3 theta + alpha).
    rec.expected_phase = wrap_2pi(c == Component::U2 ? g.alpha + kPi : g.alpha + 1.5 * kPi);
    rec.phase_error = circle_distance(fit.phase, rec.expected_phase, kPi);
    rec.signed_phase_error = circle_distance(fit.phase, rec.expected_phase, kTwoPi);
    const auto& predicted = c == Component::U2 ? g.vertex_angles : g.horizontal_angles;
    for (double p : predicted) {
        double best = std::numeric_limits<double>::infinity();
        for (double q : fit.minima) best = std::min(best, circle_distance(p, q, kTwoPi));
        rec.vertex_mismatch.push_back(best);
        rec.max_vertex_mismatch = std::max(rec.max_vertex_mismatch, best);
    }
    return rec;
}

double minima_offset(const SinusoidFit& a, const SinusoidFit& b) {
    if (a.minima.empty() || b.minima.empty()) throw DomainError("minima offset needs detected minima");
    double sum = 0.0;
    for (double p : a.minima) {
        double best = std::numeric_limits<double>::infinity();
        for (double q : b.minima) best = std::min(best, circle_distance(p, q, kTwoPi));
        sum += best;
    }
    return sum / static_cast<double>(a.minima.size());
}

IsotropyRecord isotropy_check(const FarFieldProfile& speed, const HexInvariant& inv) {
    if (speed.component != Component::Speed) throw DomainError("isotropy check needs the speed component");
    const auto& v = speed.values;
    if (v.empty()) throw DomainError("empty profile");
    IsotropyRecord rec;
    double s = 0.0;
    for (double x : v) s += x;
    rec.mean = s / static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - rec.mean) * (x - rec.mean);
    var /= static_cast<double>(v.size());
    rec.cv = rec.mean > 0.0 ? std::sqrt(var) / rec.mean : 0.0;
    rec.min_value = *std::min_element(v.begin(), v.end());
    rec.L = inv.L;
    rec.mean_error = inv.L > 0.0 ? std::fabs(rec.mean - inv.L) / inv.L : 0.0;
    rec.nowhere_at_rest = inv.L > speed.noise_floor && rec.min_value > 0.0;
    return rec;
}

double richardson_limit(double R1, double f1, double R2, double f2) {
    if (R1 == R2) throw DomainError("Richardson extrapolation needs two distinct radii");
    return (R2 * f2 - R1 * f1) / (R2 - R1);
}

Point2 Raster::pixel_center(int col, int row, double half_width) const {
    const double s = 2.0 * half_width / width;
    return {-half_width + (col + 0.5) * s, half_width - (row + 0.5) * s};
}

namespace {

void require_spec(const RasterSpec& spec) {
    if (spec.pixels < 2 || spec.pixels > 8192) throw DomainError("raster size must lie in [2, 8192]");
    if (!(spec.half_width > 0.0)) throw DomainError("raster half width must be positive");
}

void finish_range(Raster& r) {
    r.min = std::numeric_limits<double>::infinity();
    r.max = -std::numeric_limits<double>::infinity();
    for (double v : r.values) {
        r.min = std::min(r.min, v);
        r.max = std::max(r.max, v);
    }
}

double pick(Vec2 u, Component c) {
    switch (c) {
        case Component::U1: return std::fabs(u[0]);
        case Component::U2: return std::fabs(u[1]);
        case Component::Speed: return std::hypot(u[0], u[1]);
    }
    return 0.0;
}

}  // namespace

Raster render_closed_form(const MomentumFlux& flux, const RasterSpec& spec) {
    require_spec(spec);
    if (!invariant_from_flux(flux).defined()) throw DomainError("closed-form raster needs a defined hexagon");
    Raster r;
    r.width = r.height = spec.pixels;
    r.values.resize(static_cast<std::size_t>(spec.pixels) * spec.pixels);
    for (int row = 0; row < spec.pixels; ++row)
        for (int col = 0; col < spec.pixels; ++col) {
            const Point2 x = r.pixel_center(col, row, spec.half_width);
            double v = pick(grad_H(x, flux), spec.component);
            if (spec.scale_r3) v *= std::pow(x.norm(), 3);
            r.values[static_cast<std::size_t>(row) * spec.pixels + col] = v;
        }
    finish_range(r);
    return r;
}

Raster render_simulated(const GridScalarField& omega, const RasterSpec& spec) {
    require_spec(spec);
    if (spec.half_width > 0.5 * omega.box) throw DomainError("raster window exceeds the box");
    const int n = omega.n;
    Spectral& sp = spectral_for(n, omega.box);
    const GridVectorField u = [&] {
        // velocity of the zero-mean part; the mean mode carries no velocity
        GridScalarField w = omega;
        const double mean = w.mean();
        for (auto& v : w.values) v -= mean;
        Spectrum s = sp.forward(w), psi(s.size()), d1s, d2s;
        const int m = sp.nk();
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < m; ++ix) {
                const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
                const double k2 = sp.kx(ix) * sp.kx(ix) + sp.ky(iy) * sp.ky(iy);
                psi[i] = k2 == 0.0 ? std::complex<double>(0.0) : -s[i] / k2;
            }
        sp.d1(psi, d1s);
        sp.d2(psi, d2s);
        for (auto& v : d2s) v = -v;
        GridVectorField out;
        out.u1 = sp.inverse_field(d2s);
        out.u2 = sp.inverse_field(d1s);
        return out;
    }();
    const Spectrum U1 = sp.forward(u.u1), U2 = sp.forward(u.u2);
    const int m = sp.nk();
    const double x0 = omega.coord(0);

    Raster r;
    r.width = r.height = spec.pixels;
    r.values.resize(static_cast<std::size_t>(spec.pixels) * spec.pixels);
    // Separable evaluation: sum over ky per row, then over kx per pixel.
    parallel_for(spec.pixels, [&](std::size_t row) {
        const Point2 first = r.pixel_center(0, static_cast<int>(row), spec.half_width);
        const double y = first.x2 - x0;
        std::vector<std::complex<double>> a1(m, 0.0), a2(m, 0.0);
        for (int iy = 0; iy < n; ++iy) {
            if (sp.nyquist_y(iy)) continue;  // Nyquist modes are dropped
            const std::complex<double> e = std::polar(1.0, sp.ky(iy) * y);
            for (int ix = 0; ix < m; ++ix) {
                const std::size_t i = static_cast<std::size_t>(iy) * m + ix;
                a1[ix] += U1[i] * e;
                a2[ix] += U2[i] * e;
            }
        }
        const double norm = 1.0 / (static_cast<double>(n) * n);
        for (int col = 0; col < spec.pixels; ++col) {
            const Point2 p = r.pixel_center(col, static_cast<int>(row), spec.half_width);
            const double x = p.x1 - x0;
            double v1 = 0.0, v2 = 0.0;
            for (int ix = 0; ix < m; ++ix) {
                if (sp.nyquist_x(ix)) continue;
                const double w = sp.hermitian_weight(ix);
                const std::complex<double> e = std::polar(1.0, sp.kx(ix) * x);
                v1 += w * (a1[ix] * e).real();
                v2 += w * (a2[ix] * e).real();
            }
            double v = pick({v1 * norm, v2 * norm}, spec.component);
            if (spec.scale_r3) v *= std::pow(p.norm(), 3);
            r.values[row * spec.pixels + col] = v;
        }
    });
    finish_range(r);
    return r;
}

void write_pgm(const Raster& raster, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open raster file " + path);
    out << "P5\n" << raster.width << " " << raster.height << "\n255\n";
    const double span = raster.max - raster.min;
    std::vector<unsigned char> bytes(raster.values.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const double s = span > 0.0 ? (raster.values[i] - raster.min) / span : 0.0;
        bytes[i] = static_cast<unsigned char>(std::lround(std::clamp(s, 0.0, 1.0) * 255.0));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing raster file " + path);
    std::ofstream side(path + ".range");
    if (!side) throw IoError("cannot open raster sidecar " + path + ".range");
    side << fmt::format("min {:.17g}\nmax {:.17g}\n", raster.min, raster.max);
}

}  // namespace hexns
