#include "qhgeo/metric.hpp"

#include <algorithm>
#include <cmath>

namespace qhgeo {

Quaternion mat4_apply(const Mat4& m, const Quaternion& v) {
    double out[4] = {0, 0, 0, 0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r] += m[r][c] * v[c];
    return {out[0], out[1], out[2], out[3]};
}

Quaternion mat4_solve_spd(const Mat4& m, const Quaternion& b) {
    // Cholesky m = L L^T.
    double L[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[i][j];
            for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                if (s <= 0.0) throw DomainViolation("Gram matrix not positive definite");
                L[i][i] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    double y[4];
    for (int i = 0; i < 4; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= L[i][k] * y[k];
        y[i] = s / L[i][i];
    }
    double x[4];
    for (int i = 3; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < 4; ++k) s -= L[k][i] * x[k];
        x[i] = s / L[i][i];
    }
    return {x[0], x[1], x[2], x[3]};
}

static void check_domain(Model model, const Quaternion& p) {
    if (model == Model::ball) {
        if (p.norm() >= 1.0) throw DomainViolation("point outside the open unit ball");
    } else {
        if (p.re() <= 0.0) throw DomainViolation("point outside the right half-space");
    }
}

MetricCoefficients metric_coefficients(Model model, const Quaternion& p) {
    check_domain(model, p);
    const double y2 = p.im().norm_sq();
    if (model == Model::ball) {
        const double omr2 = 1.0 - p.norm_sq();
        return {1.0 / (omr2 * omr2), 1.0 / (omr2 * omr2 + 4.0 * y2)};
    }
    return {1.0 / (4.0 * p.x0 * p.x0), 1.0 / (4.0 * p.norm_sq())};
}

Mat4 gram_matrix(Model model, const Quaternion& p) {
    const MetricCoefficients c = metric_coefficients(model, p);
    // G = c2 Id + (c1 - c2) e0 e0^T + 4 c1 c2 (Im p)(Im p)^T, smooth in p.
    Mat4 g{};
    for (int i = 0; i < 4; ++i) g[i][i] = c.c2;
    g[0][0] += c.c1 - c.c2;
    const double phi = 4.0 * c.c1 * c.c2;
    const double im[3] = {p.x1, p.x2, p.x3};
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) g[r + 1][s + 1] += phi * im[r] * im[s];
    return g;
}

MetricSample metric_sample(Model model, const Quaternion& p) {
    const MetricCoefficients c = metric_coefficients(model, p);
    return MetricSample{slice_decompose(p), c.c1, c.c2, gram_matrix(model, p)};
}

double metric_length(Model model, const Quaternion& p, const Quaternion& v) {
    const MetricCoefficients c = metric_coefficients(model, p);
    const TangentSplit ts = tangent_split(p, v);
    return std::sqrt(c.c1 * ts.d1.norm_sq() + c.c2 * ts.d2.norm_sq());
}

double metric_ball(const Quaternion& w, const Quaternion& d) {
    return metric_length(Model::ball, w, d);
}

double metric_halfspace(const Quaternion& u, const Quaternion& v) {
    return metric_length(Model::halfspace, u, v);
}

double metric_polar(double r, double t, const ImaginaryUnit& I, double rdot, double tdot,
                    const Quaternion& Idot) {
    if (r < 0.0 || r >= 1.0 || t < 0.0 || t > kPi)
        throw DomainViolation("polar coordinates outside the chart");
    if (std::fabs(dot_im(I.q(), Idot)) > 1e-10 * (1.0 + Idot.norm()))
        throw DomainViolation("Idot must be tangent to the sphere at I");
    const double omr2 = 1.0 - r * r;
    const double st = std::sin(t);
    const double slice_part = (rdot * rdot + r * r * tdot * tdot) / (omr2 * omr2);
    const double fiber_part =
        r * r * st * st * Idot.norm_sq() / (omr2 * omr2 + 4.0 * r * r * st * st);
    return std::sqrt(slice_part + fiber_part);
}

double ball_volume_density(const Quaternion& w) {
    check_domain(Model::ball, w);
    const double omr2 = 1.0 - w.norm_sq();
    const double y2 = w.im().norm_sq();
    return 1.0 / (omr2 * omr2 * (omr2 * omr2 + 4.0 * y2));
}

double rsphere_volume_density(double r, double t) {
    if (r <= 0.0 || r >= 1.0) throw DomainViolation("radius outside (0,1)");
    const double omr2 = 1.0 - r * r;
    const double st = std::sin(t);
    return r * r * r * st * st / (omr2 * (omr2 * omr2 + 4.0 * r * r * st * st));
}

double s3_limit_volume_density() { return 0.25; }

double horocycle_volume_density(double c, const Quaternion& u) {
    if (c <= 0.0) throw DomainViolation("horocycle level must be positive");
    return 1.0 / (8.0 * c * (c * c + u.im().norm_sq()));
}

double hs_boundary_volume_density(const Quaternion& u) {
    const double y2 = u.im().norm_sq();
    if (y2 == 0.0) throw DomainViolation("boundary density is singular on the real axis");
    return 1.0 / (8.0 * y2);
}

IsometryMap IsometryMap::moebius_real(double lambda) {
    if (std::fabs(lambda) >= 1.0) throw DomainViolation("moebius parameter outside (-1,1)");
    IsometryMap m;
    m.kind = Kind::moebius_real;
    m.lambda = lambda;
    return m;
}

static void check_orthogonal(const Mat3& A) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += A[k][i] * A[k][j];
            if (std::fabs(s - (i == j ? 1.0 : 0.0)) > 1e-13)
                throw DomainViolation("sphere isometry matrix is not orthogonal");
        }
}

IsometryMap IsometryMap::sphere_isometry(const Mat3& A) {
    check_orthogonal(A);
    IsometryMap m;
    m.kind = Kind::sphere_isometry;
    m.A = A;
    return m;
}

IsometryMap IsometryMap::reflection() {
    IsometryMap m;
    m.kind = Kind::reflection;
    return m;
}

IsometryMap IsometryMap::hs_dilation(double lambda) {
    if (lambda <= 0.0) throw DomainViolation("dilation factor must be positive");
    IsometryMap m;
    m.kind = Kind::hs_dilation;
    m.lambda = lambda;
    return m;
}

IsometryMap IsometryMap::hs_sphere_isometry(const Mat3& A) {
    check_orthogonal(A);
    IsometryMap m;
    m.kind = Kind::hs_sphere_isometry;
    m.A = A;
    return m;
}

IsometryMap IsometryMap::hs_inversion() {
    IsometryMap m;
    m.kind = Kind::hs_inversion;
    return m;
}

Model IsometryMap::model() const {
    switch (kind) {
        case Kind::moebius_real:
        case Kind::sphere_isometry:
        case Kind::reflection:
            return Model::ball;
        default:
            return Model::halfspace;
    }
}

Quaternion apply_isometry(const IsometryMap& m, const Quaternion& q) {
    check_domain(m.model(), q);
    switch (m.kind) {
        case IsometryMap::Kind::moebius_real: {
            // Real parameter: numerator and denominator commute pointwise.
            const Quaternion num = q - Quaternion{m.lambda};
            const Quaternion den = Quaternion::one() - q * m.lambda;
            return den.inverse() * num;
        }
        case IsometryMap::Kind::sphere_isometry:
        case IsometryMap::Kind::hs_sphere_isometry: {
            const double v[3] = {q.x1, q.x2, q.x3};
            double out[3] = {0, 0, 0};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) out[r] += m.A[r][c] * v[c];
            return {q.x0, out[0], out[1], out[2]};
        }
        case IsometryMap::Kind::reflection:
            return -q.conj();
        case IsometryMap::Kind::hs_dilation:
            return q * m.lambda;
        case IsometryMap::Kind::hs_inversion:
            return q.conj().inverse();
    }
    throw DomainViolation("unknown isometry kind");
}

double pullback_ratio(const std::function<Quaternion(const Quaternion&)>& map,
                      const Quaternion& w, const Quaternion& d, Model src, Model dst,
                      double step) {
    const double margin = (src == Model::ball) ? 1.0 - w.norm() : w.re();
    if (margin <= 1e-4) throw StepTooLarge("differentiation point too close to the boundary");
    const Quaternion dhat = d / d.norm();
    double h = step;
    for (int attempt = 0;; ++attempt) {
        if (h < 0.45 * margin) {
            const Quaternion plus = map(w + dhat * h);
            const Quaternion minus = map(w - dhat * h);
            const Quaternion push = (plus - minus) * (d.norm() / (2.0 * h));
            return metric_length(dst, map(w), push) / metric_length(src, w, d);
        }
        if (attempt >= 2) throw StepTooLarge("differentiation step does not fit in the domain");
        h *= 0.25;
    }
}

double pullback_ratio(const IsometryMap& m, const Quaternion& w, const Quaternion& d,
                      double step) {
    const Model model = m.model();
    return pullback_ratio([&m](const Quaternion& q) { return apply_isometry(m, q); }, w, d,
                          model, model, step);
}

Polyline::Polyline(Model m, std::vector<Quaternion> pts) : model(m), points(std::move(pts)) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (model == Model::ball) {
            if (points[i].norm() > 1.0 - 1e-9)
                throw DomainViolation("polyline point outside the open ball");
        } else if (points[i].re() < 1e-9) {
            throw DomainViolation("polyline point outside the right half-space");
        }
        if (i > 0 && (points[i] - points[i - 1]).is_zero())
            throw DomainViolation("consecutive polyline points must be distinct");
    }
}

namespace {

// Length of one straight segment subdivided into 2^level pieces, each
// measured at its Euclidean midpoint.
double segment_length(Model model, const Quaternion& a, const Quaternion& b, int level) {
    const int n = 1 << level;
    const Quaternion step = (b - a) / static_cast<double>(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const Quaternion mid = a + step * (k + 0.5);
        acc += metric_length(model, mid, step);
    }
    return acc;
}

} // namespace

double curve_length(const Polyline& curve) {
    if (curve.points.size() < 2) return 0.0;
    double prev = 0.0;
    for (int level = 0; level <= 14; ++level) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < curve.points.size(); ++i)
            total += segment_length(curve.model, curve.points[i], curve.points[i + 1], level);
        if (level > 2 && std::fabs(total - prev) < 1e-8 * std::max(total, 1e-30)) return total;
        prev = total;
    }
    return prev;
}

Quaternion slice_projection(const Quaternion& q) {
    const SlicePoint sp = slice_decompose(q);
    return {sp.x, sp.y, 0.0, 0.0};
}

double hyperbolic_distance_disc(const std::complex<double>& z1, const std::complex<double>& z2) {
    const std::complex<double> num = z1 - z2;
    const std::complex<double> den = 1.0 - std::conj(z1) * z2;
    return std::atanh(std::abs(num / den));
}

double hyperbolic_distance_halfplane(const std::complex<double>& z1,
                                     const std::complex<double>& z2) {
    const std::complex<double> num = z1 - z2;
    const std::complex<double> den = z1 + std::conj(z2);
    return std::atanh(std::abs(num / den));
}

double projected_distance(Model model, const Quaternion& q1, const Quaternion& q2) {
    const Quaternion p1 = slice_projection(q1);
    const Quaternion p2 = slice_projection(q2);
    const std::complex<double> z1{p1.x0, p1.x1}, z2{p2.x0, p2.x1};
    return model == Model::ball ? hyperbolic_distance_disc(z1, z2)
                                : hyperbolic_distance_halfplane(z1, z2);
}

} // namespace qhgeo
