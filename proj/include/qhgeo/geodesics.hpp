#pragma once

#include <optional>
#include <vector>

#include "qhgeo/metric.hpp"
#include "qhgeo/quaternion.hpp"

namespace qhgeo {

/// Arc-length coordinate of the generating curve: rho = atanh(r).
double rho_of_r(double r);
double r_of_rho(double rho);

/// Gaussian curvature of the revolution surface D(pi/2, C(J)):
/// K = 8 / cosh^2(2 rho), positive everywhere.
double surface_curvature(double rho);

/// State on the revolution surface with metric d rho^2 + Psi(rho)^2 d theta^2,
/// Psi = (1/2) tanh(2 rho).
struct SurfaceState {
    double rho;
    double theta;
    double rho_dot;
    double theta_dot;

    /// Clairaut constant A = (1/4) tanh^2(2 rho) theta_dot.
    double clairaut() const;
    /// Squared speed rho_dot^2 + (1/4) tanh^2(2 rho) theta_dot^2.
    double energy() const;
};

struct SurfaceTracePoint {
    double s;
    SurfaceState state;
};

/// Integrate the surface geodesic equations over arc length L.
/// Throws SingularChart if the trajectory meets rho < 1e-8 with theta_dot != 0.
std::vector<SurfaceTracePoint> surface_geodesic(const SurfaceState& init, double length,
                                                double tol = 1e-12, double max_step = 0.01);

struct TraceSample {
    double s;
    Quaternion point;
    Quaternion velocity;
    double energy;   // squared metric speed
    double momentum; // conserved rotational momentum about the trace axis
};

struct GeodesicTrace {
    Model model = Model::ball;
    std::vector<TraceSample> samples;
    Quaternion momentum_axis; // imaginary unit vector, or zero for slice traces

    const TraceSample& back() const { return samples.back(); }
};

struct IntegrateOptions {
    double tol = 1e-11;
    double max_step = 0.02;
};

/// Integrate the 4D geodesic equation of the model metric with Christoffel
/// data from finite differences of the Gram field.  v0 is normalized to unit
/// metric speed; the trace is unit-speed in arc length.
GeodesicTrace cartesian_geodesic(const Quaternion& w0, const Quaternion& v0, double length,
                                 Model model = Model::ball, const IntegrateOptions& opts = {});

struct DistanceBounds {
    double lower = 0.0;
    double upper = 0.0;
    Polyline witness;
};

/// Closed-form slice lower bound and constructive sphere-arc + slice-geodesic
/// upper bound, the latter realized as a polyline measured by curve_length.
DistanceBounds distance_bounds(const Quaternion& q1, const Quaternion& q2,
                               Model model = Model::ball);

struct ShootResult {
    bool converged = false;
    double candidate = 0.0; // best-found connecting arc length
    double miss = 0.0;      // Euclidean arrival miss of the best trace
    GeodesicTrace trace;
};

/// Two-parameter shooting over initial directions in the reduced chart of the
/// great circle through the endpoints' imaginary units, refined by
/// Nelder-Mead on arrival miss-distance.
ShootResult shoot_distance(const Quaternion& q1, const Quaternion& q2,
                           int budget = 200, Model model = Model::ball);

struct RelaxOptions {
    int max_sweeps = 20000;
    double improvement_tol = 1e-8;
};

/// Discrete curve-shortening between fixed endpoints: coordinate-descent on
/// the interior vertices of a polyline with per-vertex adaptive steps.
/// Starts from the straight chord unless an initial polyline is supplied.
Polyline polyline_relax(const Quaternion& q1, const Quaternion& q2, int segments,
                        Model model = Model::ball, const Polyline* init = nullptr,
                        const RelaxOptions& opts = {});

/// Arc length at which a surface geodesic launched tangentially from
/// (rho0, theta0) first returns to the radial ray theta = theta0 (+2 pi).
struct ReturnEvent {
    double s;
    double rho;
};
ReturnEvent injectivity_return(double rho0, double tol = 1e-10);

} // namespace qhgeo
