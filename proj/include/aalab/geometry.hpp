#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace aalab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }

    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Row-major 2x2 real matrix.
struct Mat2 {
    double a00 = 0.0, a01 = 0.0;
    double a10 = 0.0, a11 = 0.0;

    Mat2() = default;
    Mat2(double m00, double m01, double m10, double m11)
        : a00(m00), a01(m01), a10(m10), a11(m11) {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Vec2 operator*(const Vec2& v) const {
        return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y};
    }
    Mat2 operator*(const Mat2& m) const {
        return {a00 * m.a00 + a01 * m.a10, a00 * m.a01 + a01 * m.a11,
                a10 * m.a00 + a11 * m.a10, a10 * m.a01 + a11 * m.a11};
    }
    Mat2 operator+(const Mat2& m) const {
        return {a00 + m.a00, a01 + m.a01, a10 + m.a10, a11 + m.a11};
    }
    Mat2 operator-(const Mat2& m) const {
        return {a00 - m.a00, a01 - m.a01, a10 - m.a10, a11 - m.a11};
    }
    Mat2 operator*(double s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }

    double det() const { return a00 * a11 - a01 * a10; }
    double trace() const { return a00 + a11; }
    Mat2 transpose() const { return {a00, a10, a01, a11}; }

    Mat2 inverse() const {
        const double d = det();
        return {a11 / d, -a01 / d, -a10 / d, a00 / d};
    }

    double max_abs() const {
        return std::max(std::max(std::abs(a00), std::abs(a01)),
                        std::max(std::abs(a10), std::abs(a11)));
    }
};

inline double wrap01(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;  // guard against floor rounding at exact integers
    return r;
}

// Point on the flat torus [0,1)^2; coordinates are kept reduced.
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;

    TorusPoint() = default;
    TorusPoint(double x_, double y_) : x(wrap01(x_)), y(wrap01(y_)) {}

    Vec2 vec() const { return {x, y}; }
};

inline TorusPoint wrap_point(const Vec2& v) { return {v.x, v.y}; }

// Representative of p in the fundamental chart (-1/2, 1/2]^2 around 0.
inline Vec2 lift_nearest_zero(const TorusPoint& p) {
    Vec2 v{p.x, p.y};
    if (v.x > 0.5) v.x -= 1.0;
    if (v.y > 0.5) v.y -= 1.0;
    return v;
}

// Lift of the coordinate difference p - q into (-1/2, 1/2]^2.
inline Vec2 torus_diff(const TorusPoint& p, const TorusPoint& q) {
    Vec2 d{p.x - q.x, p.y - q.y};
    d.x -= std::round(d.x);
    d.y -= std::round(d.y);
    return d;
}

// Flat torus metric; equals the minimum over the 9 nearest lattice translates.
inline double torus_dist(const TorusPoint& p, const TorusPoint& q) {
    return torus_diff(p, q).norm();
}

inline double dist_to_zero(const TorusPoint& p) {
    return lift_nearest_zero(p).norm();
}

// Angle between directions (mod sign), in [0, pi/2].
inline double line_angle(const Vec2& u, const Vec2& v) {
    const double c = std::abs(u.dot(v)) / (u.norm() * v.norm());
    return std::acos(std::min(1.0, c));
}

inline Vec2 rotate(const Vec2& v, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

struct HyperbolicityReport {
    bool hyperbolic = false;
    bool real_eigenvalues = false;
    double lambda1 = 0.0;  // larger modulus, when real
    double lambda2 = 0.0;
    double expanding_modulus = 0.0;
    double contracting_modulus = 0.0;
};

// Real-eigenvalue test via the discriminant; hyperbolic iff the moduli
// strictly straddle 1.
inline HyperbolicityReport hyperbolicity_certificate(const Mat2& m) {
    HyperbolicityReport rep;
    const double tr = m.trace();
    const double disc = tr * tr - 4.0 * m.det();
    if (disc <= 0.0) return rep;
    rep.real_eigenvalues = true;
    const double s = std::sqrt(disc);
    double l1 = 0.5 * (tr + s);
    double l2 = 0.5 * (tr - s);
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
    rep.lambda1 = l1;
    rep.lambda2 = l2;
    rep.expanding_modulus = std::abs(l1);
    rep.contracting_modulus = std::abs(l2);
    rep.hyperbolic = rep.expanding_modulus > 1.0 && rep.contracting_modulus < 1.0;
    return rep;
}

// Unit eigenvector of m for eigenvalue lambda (m assumed to have real spectrum).
inline Vec2 eigenvector_for(const Mat2& m, double lambda) {
    Vec2 v;
    if (std::abs(m.a01) >= std::abs(m.a10)) {
        v = {m.a01, lambda - m.a00};
        if (v.norm() < 1e-14) v = {lambda - m.a11, m.a10};
    } else {
        v = {lambda - m.a11, m.a10};
        if (v.norm() < 1e-14) v = {m.a01, lambda - m.a00};
    }
    if (v.norm() < 1e-14) v = {1.0, 0.0};  // diagonal matrix
    v = v.normalized();
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
    return v;
}

}  // namespace aalab
