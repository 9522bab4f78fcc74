#pragma once

#include <array>
#include <vector>

#include "qhgeo/quaternion.hpp"

namespace qhgeo {

/// Nodes and weights of a 1D rule on [a, b].
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule of order n mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre: the given panel edges, n nodes per panel.
Rule1D composite_gauss_legendre(const std::vector<double>& edges, int n);

/// Panel edges for [a, b] geometrically refined toward both endpoints down
/// to a minimum first-panel width.
std::vector<double> edges_refined_toward_ends(double a, double b, double min_width);

/// Panel edges 0, w, 2w, 4w, ... covering [0, b] (geometric growth from 0).
std::vector<double> edges_geometric_from_zero(double b, double first_width);

/// Quadrature rule on the unit two-sphere; weights sum to 4*pi.
/// Unit vectors are stored as imaginary quaternions.
struct SphereRule {
    std::vector<Quaternion> nodes;
    std::vector<double> weights;
};

/// Lebedev rule exact through polynomial degree 7 (26 points).
const SphereRule& lebedev26();
/// Lebedev rule exact through polynomial degree 11 (50 points).
const SphereRule& lebedev50();

/// A value plus the difference between the two refinement levels it came from.
struct QuadratureResult {
    double value = 0.0;
    double refinement_error = 0.0;
};

} // namespace qhgeo
