#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "qhgeo/errors.hpp"

namespace qhgeo {

/// A quaternion q = x0 + x1*i + x2*j + x3*k over binary64 components.
///
/// The imaginary units obey ij = k, jk = i, ki = j and i^2 = j^2 = k^2 = -1.
/// Values are immutable in spirit: every operation returns a new quaternion.
struct Quaternion {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a, double b, double c, double d) : x0(a), x1(b), x2(c), x3(d) {}
    /// Real number embedded in the quaternions.
    constexpr Quaternion(double a) : x0(a) {}

    static constexpr Quaternion zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr double re() const { return x0; }
    /// Imaginary part as a quaternion with zero real component.
    constexpr Quaternion im() const { return {0.0, x1, x2, x3}; }

    constexpr double norm_sq() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
    double norm() const { return std::sqrt(norm_sq()); }
    /// Euclidean norm of the imaginary part.
    double im_norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

    constexpr Quaternion conj() const { return {x0, -x1, -x2, -x3}; }

    constexpr Quaternion operator-() const { return {-x0, -x1, -x2, -x3}; }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        x0 += r.x0; x1 += r.x1; x2 += r.x2; x3 += r.x3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        x0 -= r.x0; x1 -= r.x1; x2 -= r.x2; x3 -= r.x3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        x0 *= s; x1 *= s; x2 *= s; x3 *= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
    friend constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

    /// Hamilton product under the table ij = k, jk = i, ki = j.
    friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        return {p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
                p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
                p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
                p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0};
    }

    /// Multiplicative inverse conj(q)/|q|^2.  Throws ZeroDivisionError at q = 0.
    Quaternion inverse() const {
        const double n2 = norm_sq();
        if (n2 == 0.0) throw ZeroDivisionError("quaternion inverse of zero");
        return conj() / n2;
    }

    constexpr bool is_zero() const { return x0 == 0.0 && x1 == 0.0 && x2 == 0.0 && x3 == 0.0; }

    constexpr double operator[](int l) const {
        return l == 0 ? x0 : (l == 1 ? x1 : (l == 2 ? x2 : x3));
    }

    friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3;
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << "(" << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ")";
    }
};

/// Euclidean R^4 inner product.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
    return a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

/// Euclidean R^3 inner product of the imaginary parts.
constexpr double dot_im(const Quaternion& a, const Quaternion& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

/// Cross product of the imaginary parts, returned as an imaginary quaternion.
constexpr Quaternion cross_im(const Quaternion& a, const Quaternion& b) {
    return {0.0,
            a.x2 * b.x3 - a.x3 * b.x2,
            a.x3 * b.x1 - a.x1 * b.x3,
            a.x1 * b.x2 - a.x2 * b.x1};
}

inline double abs(const Quaternion& q) { return q.norm(); }

/// Quaternionic exponential e^q = e^{Re q} (cos|v| + sin|v| v/|v|), v = Im q.
inline Quaternion exp(const Quaternion& q) {
    const double ex = std::exp(q.x0);
    const double v = q.im_norm();
    if (v == 0.0) return {ex, 0.0, 0.0, 0.0};
    const double s = ex * std::sin(v) / v;
    return {ex * std::cos(v), s * q.x1, s * q.x2, s * q.x3};
}

} // namespace qhgeo
