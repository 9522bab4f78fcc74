#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "qhgeo/quaternion.hpp"
#include "qhgeo/slice.hpp"

namespace qhgeo {

enum class Model { ball, halfspace };

using Mat4 = std::array<std::array<double, 4>, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;

Quaternion mat4_apply(const Mat4& m, const Quaternion& v);
/// Solve m x = b for symmetric positive definite m (Cholesky).
Quaternion mat4_solve_spd(const Mat4& m, const Quaternion& b);

/// Slice and orthogonal metric coefficients at a point of the model.
struct MetricCoefficients {
    double c1;
    double c2;
};

MetricCoefficients metric_coefficients(Model model, const Quaternion& p);

/// Metric sample: coefficients plus the Gram matrix in the basis {1,i,j,k}.
struct MetricSample {
    SlicePoint point;
    double c1;
    double c2;
    Mat4 gram;
};

MetricSample metric_sample(Model model, const Quaternion& p);

/// Gram matrix of the metric; smooth across the real axis.
Mat4 gram_matrix(Model model, const Quaternion& p);

/// Length of tangent vector d at w in (B, g).
double metric_ball(const Quaternion& w, const Quaternion& d);

/// Length of tangent vector v at u in (H+, h).
double metric_halfspace(const Quaternion& u, const Quaternion& v);

double metric_length(Model model, const Quaternion& p, const Quaternion& v);

/// Polar-chart metric value for velocity (rdot, tdot, Idot) at r e^{tI};
/// Idot must be Euclidean-orthogonal to I.
double metric_polar(double r, double t, const ImaginaryUnit& I, double rdot, double tdot,
                    const Quaternion& Idot);

/// Volume density of dVol_g on the ball against the Euclidean element.
double ball_volume_density(const Quaternion& w);
/// Density of dVol_{rS^3} against dt dA_S at r e^{tI}.
double rsphere_volume_density(double r, double t);
/// Boundary S^3 density against dt dA_S (constant 1/4).
double s3_limit_volume_density();
/// Horocycle Re = c density against dx1 dx2 dx3 at u.
double horocycle_volume_density(double c, const Quaternion& u);
/// Half-space boundary density against dx1 dx2 dx3 at u (Re u = 0).
double hs_boundary_volume_density(const Quaternion& u);

/// The isometry families of the two models.
struct IsometryMap {
    enum class Kind {
        moebius_real,       // ball: q -> (q - l)(1 - ql)^{-1}, l in (-1,1)
        sphere_isometry,    // ball: x + yI -> x + yA(I), A in O(3)
        reflection,         // ball: q -> -conj(q)
        hs_dilation,        // half-space: q -> q l, l > 0
        hs_sphere_isometry, // half-space version of sphere_isometry
        hs_inversion        // half-space: q -> conj(q)^{-1}
    };

    Kind kind;
    double lambda = 0.0;
    Mat3 A{};

    static IsometryMap moebius_real(double lambda);
    static IsometryMap sphere_isometry(const Mat3& A);
    static IsometryMap reflection();
    static IsometryMap hs_dilation(double lambda);
    static IsometryMap hs_sphere_isometry(const Mat3& A);
    static IsometryMap hs_inversion();

    Model model() const;
};

Quaternion apply_isometry(const IsometryMap& m, const Quaternion& q);

/// Numeric-differential length-distortion ratio
/// |m_*(w) d|_{metric(m(w))} / |d|_{metric(w)} via central differences.
///
/// Steps shrink twice near the boundary before StepTooLarge is raised.
double pullback_ratio(const std::function<Quaternion(const Quaternion&)>& map,
                      const Quaternion& w, const Quaternion& d, Model src, Model dst,
                      double step = 1e-6);

double pullback_ratio(const IsometryMap& m, const Quaternion& w, const Quaternion& d,
                      double step = 1e-6);

/// Ordered sample points of a curve inside one model domain.
struct Polyline {
    Model model = Model::ball;
    std::vector<Quaternion> points;

    Polyline() = default;
    Polyline(Model m, std::vector<Quaternion> pts);
};

/// Metric length of the piecewise-straight path through the polyline points,
/// refined by midpoint insertion until the relative change drops below 1e-8.
double curve_length(const Polyline& curve);

/// Projection onto the distinguished slice L_i: x + yI -> x + yi.
Quaternion slice_projection(const Quaternion& q);

/// Hyperbolic distance between same-slice points in the ball model
/// (metric |dz|/(1 - |z|^2)): atanh of the pseudo-hyperbolic modulus.
double hyperbolic_distance_disc(const std::complex<double>& z1, const std::complex<double>& z2);

/// Hyperbolic distance in the right half-plane model (metric |dz|/(2x)).
double hyperbolic_distance_halfplane(const std::complex<double>& z1,
                                     const std::complex<double>& z2);

/// Distance between the slice projections, in the model's slice metric.
double projected_distance(Model model, const Quaternion& q1, const Quaternion& q2);

} // namespace qhgeo
