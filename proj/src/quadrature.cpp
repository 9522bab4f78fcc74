#include "qhgeo/quadrature.hpp"

#include <cmath>

#include "qhgeo/slice.hpp"

namespace qhgeo {

namespace {

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

} // namespace

Rule1D gauss_legendre(int n, double a, double b) {
    std::vector<double> x, w;
    legendre_nodes(n, x, w);
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = mid + half * x[i];
        r.weights[i] = half * w[i];
    }
    return r;
}

Rule1D composite_gauss_legendre(const std::vector<double>& edges, int n) {
    std::vector<double> x, w;
    legendre_nodes(n, x, w);
    Rule1D r;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < n; ++i) {
            r.nodes.push_back(mid + half * x[i]);
            r.weights.push_back(half * w[i]);
        }
    }
    return r;
}

std::vector<double> edges_refined_toward_ends(double a, double b, double min_width) {
    const double mid = 0.5 * (a + b);
    std::vector<double> left{a};
    double w = min_width;
    double pos = a;
    while (pos + w < mid) {
        pos += w;
        left.push_back(pos);
        w *= 2.0;
    }
    std::vector<double> edges(left);
    edges.push_back(mid);
    for (std::size_t i = left.size(); i-- > 0;) edges.push_back(b - (left[i] - a));
    return edges;
}

std::vector<double> edges_geometric_from_zero(double b, double first_width) {
    std::vector<double> edges{0.0};
    double w = first_width;
    double pos = 0.0;
    while (pos + w < b) {
        pos += w;
        edges.push_back(pos);
        w *= 2.0;
    }
    edges.push_back(b);
    return edges;
}

namespace {

void add_class_a1(SphereRule& r, double w) {
    // Octahedron vertices (+-1, 0, 0) and permutations.
    for (int axis = 1; axis <= 3; ++axis)
        for (double s : {1.0, -1.0}) {
            Quaternion q{};
            if (axis == 1) q.x1 = s;
            if (axis == 2) q.x2 = s;
            if (axis == 3) q.x3 = s;
            r.nodes.push_back(q);
            r.weights.push_back(w);
        }
}

void add_class_a2(SphereRule& r, double w) {
    // Edge midpoints (+-1, +-1, 0)/sqrt(2) and permutations.
    const double c = 1.0 / std::sqrt(2.0);
    for (int skip = 1; skip <= 3; ++skip)
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) {
                double v[4] = {0, 0, 0, 0};
                int idx = 0;
                for (int axis = 1; axis <= 3; ++axis)
                    if (axis != skip) v[axis] = (idx++ == 0 ? s1 : s2) * c;
                r.nodes.push_back(Quaternion{0, v[1], v[2], v[3]});
                r.weights.push_back(w);
            }
}

void add_class_a3(SphereRule& r, double w) {
    // Cube vertices (+-1, +-1, +-1)/sqrt(3).
    const double c = 1.0 / std::sqrt(3.0);
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0})
            for (double s3 : {1.0, -1.0}) {
                r.nodes.push_back(Quaternion{0, s1 * c, s2 * c, s3 * c});
                r.weights.push_back(w);
            }
}

void add_class_b(SphereRule& r, double w, double l) {
    // (l, l, m) with m = sqrt(1 - 2 l^2), all sign/position combinations.
    const double m = std::sqrt(1.0 - 2.0 * l * l);
    for (int mpos = 1; mpos <= 3; ++mpos)
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0})
                for (double s3 : {1.0, -1.0}) {
                    double v[4] = {0, 0, 0, 0};
                    double signs[3] = {s1, s2, s3};
                    int idx = 0;
                    for (int axis = 1; axis <= 3; ++axis)
                        v[axis] = signs[idx++] * (axis == mpos ? m : l);
                    r.nodes.push_back(Quaternion{0, v[1], v[2], v[3]});
                    r.weights.push_back(w);
                }
}

SphereRule build_lebedev26() {
    SphereRule r;
    const double fourpi = 4.0 * kPi;
    add_class_a1(r, fourpi / 21.0);
    add_class_a2(r, fourpi * 4.0 / 105.0);
    add_class_a3(r, fourpi * 27.0 / 840.0);
    return r;
}

SphereRule build_lebedev50() {
    SphereRule r;
    const double fourpi = 4.0 * kPi;
    add_class_a1(r, fourpi * 4.0 / 315.0);
    add_class_a2(r, fourpi * 64.0 / 2835.0);
    add_class_a3(r, fourpi * 27.0 / 1280.0);
    add_class_b(r, fourpi * 14641.0 / 725760.0, 1.0 / std::sqrt(11.0));
    return r;
}

} // namespace

const SphereRule& lebedev26() {
    static const SphereRule r = build_lebedev26();
    return r;
}

const SphereRule& lebedev50() {
    static const SphereRule r = build_lebedev50();
    return r;
}

} // namespace qhgeo
