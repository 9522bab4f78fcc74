#pragma once

#include <functional>
#include <vector>

#include "qhgeo/quadrature.hpp"
#include "qhgeo/series.hpp"

namespace qhgeo {

/// H^2 inner product <f, g> = sum conj(b_n) a_n (f = sum q^n a_n, g = sum q^n b_n).
Quaternion inner_product(const RegularSeries& f, const RegularSeries& g);

enum class DeltaMethod { kernel, moebius };

/// Pseudo-hyperbolic distance on the ball.
///
/// kernel route: sqrt(1 - |<k_w/|k_w|, k_z/|k_z|>|^2) from closed-form kernel
/// values; moebius route: |M_w(z)| through the regular quotient.
double delta(const Quaternion& w, const Quaternion& z, DeltaMethod method);

/// Closed-form H^2(B) norms of the kernel and its derivative representers at w.
struct KernelNorms {
    double k_norm2;    // |k_w|^2
    double dc_norm2;   // |d_c k_q(w)|^2 as an H^2 element
    double ds_norm2;   // |d_s k_q(w)|^2 as an H^2 element
    double dc_at_w2;   // |d_c k_w(w)|^2 pointwise
    double ds_at_w2;   // |d_s k_w(w)|^2 pointwise
};

KernelNorms kernel_norms(const Quaternion& w);

/// Metric coefficients (slice, orthogonal) of the generic RKHS metric from
/// the kernel norms.  For the Hardy kernel these equal 1/(1-|w|^2)^2 and
/// 1/|1-w^2|^2.
struct RkhsCoefficients {
    double c1;
    double c2;
};

RkhsCoefficients rkhs_metric_coefficients(const KernelNorms& n);

/// Boundary integral of |f|^2 over S^3 with the volume form (1/4) dt dA_S.
double sphere_boundary_integral(const RegularSeries& f, QuadratureResult* info = nullptr);

/// (1 - r^2) times the dVol_{rS^3}-average of |f|^2 on the sphere of radius r.
double sphere_limit_norm(const RegularSeries& f, double r, QuadratureResult* info = nullptr);

/// Density F on [0, inf) defining f(q) = int e^{-zeta q} F(zeta) dzeta.
///
/// Named analytic family F(zeta) = zeta^power e^{-zeta decay} scale with
/// Re(decay) > 0, or a sampled grid carrying its own quadrature rule.
struct LaplaceDensity {
    Quaternion decay = Quaternion::one();
    int power = 0;
    Quaternion scale = Quaternion::one();

    bool sampled = false;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<Quaternion> values;

    static LaplaceDensity exponential(const Quaternion& decay, int power = 0,
                                      const Quaternion& scale = Quaternion::one());

    Quaternion value(double zeta) const;
    /// int_0^inf |F|^2 dzeta; closed form for the named family.
    double norm_sq() const;
    /// Truncation point where the named-family envelope falls below 1e-18.
    double tail_cutoff() const;
};

/// Laplace-transform evaluation f(q) = int_0^inf e^{-zeta q} F(zeta) dzeta by
/// oscillation-aware composite quadrature.  Requires Re(q) > 0.
Quaternion laplace_eval(const LaplaceDensity& F, const Quaternion& q, double* refinement = nullptr);

/// Boundary integral int_S int_0^inf |f(yI)|^2 (1/8) dy dA_S with f evaluated
/// through laplace_eval at Re = eps_bd.
double halfspace_boundary_integral(const LaplaceDensity& F, QuadratureResult* info = nullptr,
                                   double eps_bd = 1e-6);

/// Both sides of the kernel rescaling identity
/// k_B(C^{-1}(w), C^{-1}(z)) = (1/2)(1+z) k_{H+}(w, z)(1+conj(w)).
struct RescalingCheck {
    Quaternion lhs;
    Quaternion rhs;
};

RescalingCheck donatini_rescaling_check(const Quaternion& w, const Quaternion& z);

} // namespace qhgeo
