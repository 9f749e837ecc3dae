#pragma once

#include <array>
#include <cmath>

namespace hexns {

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    double norm() const { return std::hypot(x1, x2); }
    double norm2() const { return x1 * x1 + x2 * x2; }

    bool operator==(const Point2&) const = default;
};

inline Point2 operator*(double s, Point2 p) { return {s * p.x1, s * p.x2}; }
inline Point2 operator+(Point2 p, Point2 q) { return {p.x1 + q.x1, p.x2 + q.x2}; }
inline Point2 operator-(Point2 p, Point2 q) { return {p.x1 - q.x1, p.x2 - q.x2}; }
inline Point2 operator-(Point2 p) { return {-p.x1, -p.x2}; }

using Vec2 = std::array<double, 2>;

// 2x2x2 tensor T_{j;h,k}, indices 0-based.
struct Tensor3 {
    std::array<double, 8> v{};

    double& operator()(int j, int h, int k) { return v[4 * j + 2 * h + k]; }
    double operator()(int j, int h, int k) const { return v[4 * j + 2 * h + k]; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::fmax(m, std::fabs(x));
        return m;
    }
    double frobenius() const {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    Tensor3& operator+=(const Tensor3& o) {
        for (int i = 0; i < 8; ++i) v[i] += o.v[i];
        return *this;
    }
    Tensor3& operator-=(const Tensor3& o) {
        for (int i = 0; i < 8; ++i) v[i] -= o.v[i];
        return *this;
    }
    Tensor3& operator*=(double s) {
        for (double& x : v) x *= s;
        return *this;
    }
};

inline Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
inline Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
inline Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

// Symmetric 2x2 matrix [[m11, m12], [m12, m22]].
struct Sym2 {
    double m11 = 0.0;
    double m12 = 0.0;
    double m22 = 0.0;
};

// sum_{h,k} T_{j;h,k} M_{h,k}
inline Vec2 contract(const Tensor3& t, const Sym2& m) {
    Vec2 r{};
    for (int j = 0; j < 2; ++j)
        r[j] = t(j, 0, 0) * m.m11 + (t(j, 0, 1) + t(j, 1, 0)) * m.m12 + t(j, 1, 1) * m.m22;
    return r;
}

}  // namespace hexns
