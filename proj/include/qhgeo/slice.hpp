#pragma once

#include <algorithm>
#include <cmath>

#include "qhgeo/quaternion.hpp"

namespace qhgeo {

inline constexpr double kPi = 3.14159265358979323846;

/// Unit imaginary quaternion; determines the slice L_I = R + R*I.
///
/// Construction validates Re = 0 (up to 1e-14 |I|) and renormalizes to unit
/// length.  canonical() flips the sign so the first nonzero component of
/// (x1, x2, x3) is positive, giving L_I = L_{-I} a unique representative.
struct ImaginaryUnit {
    Quaternion u;

    explicit ImaginaryUnit(const Quaternion& v) {
        const double n = v.norm();
        if (n == 0.0) throw DomainViolation("imaginary unit from zero vector");
        if (std::fabs(v.x0) > 1e-14 * n)
            throw DomainViolation("imaginary unit has nonzero real part");
        u = Quaternion{0.0, v.x1, v.x2, v.x3} / v.im_norm();
    }

    static ImaginaryUnit designated() { return ImaginaryUnit(Quaternion::i()); }

    ImaginaryUnit canonical() const {
        ImaginaryUnit r = *this;
        for (int l = 1; l < 4; ++l) {
            if (r.u[l] != 0.0) {
                if (r.u[l] < 0.0) r.u = Quaternion{0.0, -r.u.x1, -r.u.x2, -r.u.x3};
                break;
            }
        }
        return r;
    }

    const Quaternion& q() const { return u; }
};

/// Canonical decomposition q = x + y I with y >= 0.
///
/// The y >= 0 convention pins I = Im(q)/|Im(q)|, so reconstruction always
/// returns the source point.  real_flag marks points within eps_real of the
/// real axis; there the unit is the designated i and consumers must not
/// depend on it.  Use I.canonical() where a unique slice label is needed.
struct SlicePoint {
    double x;
    double y;
    ImaginaryUnit I;
    bool real_flag;

    Quaternion reconstruct() const { return Quaternion{x} + I.q() * y; }
};

/// Threshold below which |Im q| is treated as zero.
inline double real_axis_eps(const Quaternion& q) { return 1e-12 * (1.0 + q.norm()); }

inline SlicePoint slice_decompose(const Quaternion& q) {
    const double y = q.im_norm();
    if (y < real_axis_eps(q))
        return SlicePoint{q.x0, 0.0, ImaginaryUnit::designated(), true};
    return SlicePoint{q.x0, y, ImaginaryUnit(q.im()), false};
}

/// Spherical coordinates q = r e^{t I} = r (cos t + sin t I), t in [0, pi].
struct Polar {
    double r;
    double t;
    ImaginaryUnit I;
};

inline Polar polar(const Quaternion& q) {
    const double r = q.norm();
    const SlicePoint sp = slice_decompose(q);
    if (r == 0.0) return Polar{0.0, 0.0, sp.I};
    return Polar{r, std::atan2(sp.y, sp.x), sp.I};
}

inline Quaternion from_polar(double r, double t, const ImaginaryUnit& I) {
    return Quaternion{r * std::cos(t)} + I.q() * (r * std::sin(t));
}

/// Euclidean-orthogonal splitting of a tangent vector against span{1, I_w}.
struct TangentSplit {
    Quaternion d1; // component in the slice plane span{1, I_w}
    Quaternion d2; // component in the Euclidean orthogonal complement
};

inline TangentSplit tangent_split(const SlicePoint& w, const Quaternion& d) {
    const Quaternion& I = w.I.q();
    const Quaternion d1 = Quaternion{d.x0} + I * dot(d, I);
    return TangentSplit{d1, d - d1};
}

inline TangentSplit tangent_split(const Quaternion& w, const Quaternion& d) {
    return tangent_split(slice_decompose(w), d);
}

/// Great-circle distance on the sphere of imaginary units, in [0, pi].
inline double sphere_distance(const ImaginaryUnit& I1, const ImaginaryUnit& I2) {
    const double c = std::clamp(dot_im(I1.q(), I2.q()), -1.0, 1.0);
    return std::acos(c);
}

} // namespace qhgeo
