#include "qhgeo/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qhgeo/ode.hpp"
#include "qhgeo/slice.hpp"

namespace qhgeo {

using cplx = std::complex<double>;

double rho_of_r(double r) {
    if (r < 0.0 || r >= 1.0) throw DomainViolation("rho_of_r requires 0 <= r < 1");
    return std::atanh(r);
}

double r_of_rho(double rho) {
    if (rho < 0.0) throw DomainViolation("r_of_rho requires rho >= 0");
    return std::tanh(rho);
}

double surface_curvature(double rho) {
    const double c = std::cosh(2.0 * rho);
    return 8.0 / (c * c);
}

double SurfaceState::clairaut() const {
    const double t = std::tanh(2.0 * rho);
    return 0.25 * t * t * theta_dot;
}

double SurfaceState::energy() const {
    const double t = std::tanh(2.0 * rho);
    return rho_dot * rho_dot + 0.25 * t * t * theta_dot * theta_dot;
}

std::vector<SurfaceTracePoint> surface_geodesic(const SurfaceState& init, double length,
                                                double tol, double max_step) {
    if (init.rho < 1e-8 && std::fabs(init.theta_dot) > 1e-12)
        throw SingularChart("surface chart is singular on the axis with angular motion");

    const auto rhs = [](double, const std::array<double, 4>& y) -> std::array<double, 4> {
        const double t = std::tanh(2.0 * y[0]);
        const double sech2 = 1.0 - t * t;
        const double psi = 0.5 * t;
        // rho'' = Psi Psi' theta_dot^2, theta'' = -2 (Psi'/Psi) rho_dot theta_dot.
        const double rdd = psi * sech2 * y[3] * y[3];
        const double tdd = (psi != 0.0) ? -2.0 * (sech2 / psi) * y[2] * y[3] : 0.0;
        return {y[2], y[3], rdd, tdd};
    };

    std::vector<SurfaceTracePoint> out;
    bool singular = false;
    integrate_dp45<4>(
        rhs, {init.rho, init.theta, init.rho_dot, init.theta_dot}, 0.0, length, tol, max_step,
        [&](double s, const std::array<double, 4>& y) {
            out.push_back({s, SurfaceState{y[0], y[1], y[2], y[3]}});
            if (y[0] < 1e-8 && std::fabs(y[3]) > 1e-12) {
                singular = true;
                return false;
            }
            return true;
        });
    if (singular)
        throw SingularChart("surface geodesic reached the axis with angular motion");
    return out;
}

namespace {

double boundary_margin(Model model, const Quaternion& p) {
    return model == Model::ball ? 1.0 - p.norm() : p.re();
}

Quaternion basis_vector(int dir) {
    switch (dir) {
        case 0: return Quaternion::one();
        case 1: return Quaternion::i();
        case 2: return Quaternion::j();
        default: return Quaternion::k();
    }
}

// 4th-order central difference of the Gram field in coordinate direction dir.
Mat4 gram_partial(Model model, const Quaternion& w, int dir, double h) {
    const Quaternion e = basis_vector(dir);
    const Mat4 gp2 = gram_matrix(model, w + e * (2.0 * h));
    const Mat4 gp1 = gram_matrix(model, w + e * h);
    const Mat4 gm1 = gram_matrix(model, w - e * h);
    const Mat4 gm2 = gram_matrix(model, w - e * (2.0 * h));
    Mat4 d{};
    const double inv = 1.0 / (12.0 * h);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            d[r][c] = (-gp2[r][c] + 8.0 * gp1[r][c] - 8.0 * gm1[r][c] + gm2[r][c]) * inv;
    return d;
}

// Geodesic acceleration in momentum form: G v' = (1/2) v^T (d_a G) v - sum_b v^b (d_b G) v.
Quaternion geodesic_acceleration(Model model, const Quaternion& w, const Quaternion& v) {
    const double h = std::min(1e-5, boundary_margin(model, w) / 100.0);
    Mat4 dG[4];
    for (int dir = 0; dir < 4; ++dir) dG[dir] = gram_partial(model, w, dir, h);
    double rhs[4];
    Quaternion dGv[4];
    for (int dir = 0; dir < 4; ++dir) dGv[dir] = mat4_apply(dG[dir], v);
    for (int a = 0; a < 4; ++a) {
        double acc = 0.5 * dot(v, dGv[a]);
        for (int b = 0; b < 4; ++b) acc -= v[b] * dGv[b][a];
        rhs[a] = acc;
    }
    return mat4_solve_spd(gram_matrix(model, w), {rhs[0], rhs[1], rhs[2], rhs[3]});
}

// Rotational Killing field about the given axis: w -> (0, axis x Im w).
Quaternion killing_field(const Quaternion& axis, const Quaternion& w) {
    return cross_im(axis, w);
}

Quaternion momentum_axis_for(const Quaternion& w0, const Quaternion& v0) {
    const Quaternion imw = w0.im();
    const Quaternion imv = v0.im();
    if (imw.norm() < 1e-12) {
        // Radial/slice launch: any axis orthogonal to the motion plane works;
        // momentum vanishes identically.
        return Quaternion::zero();
    }
    const Quaternion i0 = imw / imw.norm();
    const Quaternion circ = imv - i0 * dot_im(imv, i0);
    if (circ.norm() < 1e-12) return Quaternion::zero(); // slice trace
    const Quaternion axis = cross_im(i0, circ);
    return axis / axis.norm();
}

} // namespace

GeodesicTrace cartesian_geodesic(const Quaternion& w0, const Quaternion& v0, double length,
                                 Model model, const IntegrateOptions& opts) {
    if (boundary_margin(model, w0) < 1e-3)
        throw DomainViolation("geodesic start must keep a 1e-3 margin from the boundary");
    if (v0.is_zero()) throw DomainViolation("geodesic needs a nonzero initial velocity");

    GeodesicTrace trace;
    trace.model = model;
    trace.momentum_axis = momentum_axis_for(w0, v0);
    const Quaternion v0u = v0 / metric_length(model, w0, v0);

    const auto rhs = [model](double, const std::array<double, 8>& y) -> std::array<double, 8> {
        const Quaternion w{y[0], y[1], y[2], y[3]};
        const Quaternion v{y[4], y[5], y[6], y[7]};
        const Quaternion a = geodesic_acceleration(model, w, v);
        return {v.x0, v.x1, v.x2, v.x3, a.x0, a.x1, a.x2, a.x3};
    };

    bool left_domain = false;
    integrate_dp45<8>(
        rhs, {w0.x0, w0.x1, w0.x2, w0.x3, v0u.x0, v0u.x1, v0u.x2, v0u.x3}, 0.0, length,
        opts.tol, opts.max_step, [&](double s, const std::array<double, 8>& y) {
            const Quaternion w{y[0], y[1], y[2], y[3]};
            const Quaternion v{y[4], y[5], y[6], y[7]};
            if (boundary_margin(model, w) < 1e-6) {
                left_domain = true;
                return false;
            }
            const Mat4 g = gram_matrix(model, w);
            const double energy = dot(v, mat4_apply(g, v));
            const double momentum =
                trace.momentum_axis.is_zero()
                    ? 0.0
                    : dot(v, mat4_apply(g, killing_field(trace.momentum_axis, w)));
            trace.samples.push_back({s, w, v, energy, momentum});
            return true;
        });
    if (left_domain) throw DomainViolation("geodesic trace left the model domain");
    return trace;
}

namespace {

Quaternion embed_slice(const cplx& z, const Quaternion& unit) {
    return Quaternion{z.real()} + unit * z.imag();
}

// Hyperbolic geodesic samples between two points of the disc, inclusive.
std::vector<cplx> sample_disc_geodesic(const cplx& z1, const cplx& z2, int n) {
    const cplx zeta2 = (z2 - z1) / (1.0 - std::conj(z1) * z2);
    const double d = std::atanh(std::min(std::abs(zeta2), 1.0 - 1e-16));
    const cplx dir = (std::abs(zeta2) == 0.0) ? cplx{1, 0} : zeta2 / std::abs(zeta2);
    std::vector<cplx> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        const cplx zeta = dir * std::tanh(d * k / n);
        out.push_back((zeta + z1) / (1.0 + std::conj(z1) * zeta));
    }
    return out;
}

std::vector<cplx> sample_slice_geodesic(Model model, const cplx& z1, const cplx& z2, int n) {
    if (model == Model::ball) return sample_disc_geodesic(z1, z2, n);
    // Transport the right half-plane to the disc, sample, and map back.
    const auto to_disc = [](const cplx& z) { return (z - 1.0) / (z + 1.0); };
    const auto from_disc = [](const cplx& w) { return (1.0 + w) / (1.0 - w); };
    std::vector<cplx> disc = sample_disc_geodesic(to_disc(z1), to_disc(z2), n);
    for (auto& w : disc) w = from_disc(w);
    return disc;
}

void append_point(std::vector<Quaternion>& pts, const Quaternion& p) {
    if (pts.empty() || (p - pts.back()).norm() > 1e-14) pts.push_back(p);
}

// Unit tangent of the great circle at I1 toward I2; empty when degenerate.
std::optional<Quaternion> circle_direction(const Quaternion& I1, const Quaternion& I2) {
    const Quaternion perp = I2 - I1 * dot_im(I2, I1);
    if (perp.norm() > 1e-12) return perp / perp.norm();
    return std::nullopt;
}

Quaternion any_orthogonal_unit(const Quaternion& I) {
    Quaternion c = cross_im(I, Quaternion::i());
    if (c.norm() < 1e-6) c = cross_im(I, Quaternion::j());
    return c / c.norm();
}

} // namespace

DistanceBounds distance_bounds(const Quaternion& q1, const Quaternion& q2, Model model) {
    if (boundary_margin(model, q1) <= 0.0 || boundary_margin(model, q2) <= 0.0)
        throw DomainViolation("distance bounds require interior points");

    DistanceBounds out;
    out.lower = projected_distance(model, q1, q2);
    if ((q1 - q2).is_zero()) {
        out.witness = Polyline(model, {q1});
        return out;
    }

    const SlicePoint s1 = slice_decompose(q1);
    const SlicePoint s2 = slice_decompose(q2);
    const Quaternion I1 = s1.I.q();
    const Quaternion I2 = s2.I.q();
    const double phi = (s1.real_flag || s2.real_flag) ? 0.0 : sphere_distance(s1.I, s2.I);

    const int arc_n = std::max(2, static_cast<int>(128 * phi));
    const int geo_n = 256;

    // Great-circle arc x + y I(t), I(t) = cos(t) I1 + sin(t) J, t in [0, phi].
    const auto arc_points = [&](double x, double y, bool toward_two) {
        std::vector<Quaternion> pts;
        if (phi < 1e-14 || y < 1e-14) return pts;
        const Quaternion from = toward_two ? I1 : I2;
        const Quaternion to = toward_two ? I2 : I1;
        Quaternion jhat;
        if (auto dir = circle_direction(from, to))
            jhat = *dir;
        else
            jhat = any_orthogonal_unit(from); // antipodal units: any meridian
        for (int k = 0; k <= arc_n; ++k) {
            const double t = phi * k / arc_n;
            const Quaternion unit = from * std::cos(t) + jhat * std::sin(t);
            append_point(pts, Quaternion{x} + unit * y);
        }
        return pts;
    };

    const auto slice_part = [&](const cplx& a, const cplx& b, const Quaternion& unit) {
        std::vector<Quaternion> pts;
        if (std::abs(a - b) < 1e-15) return pts;
        for (const cplx& z : sample_slice_geodesic(model, a, b, geo_n))
            pts.push_back(embed_slice(z, unit));
        return pts;
    };

    const cplx z1{s1.x, s1.y}, z2{s2.x, s2.y};
    const auto build = [&](bool arc_first) {
        std::vector<Quaternion> pts{q1};
        if (arc_first) {
            for (const auto& p : arc_points(s1.x, s1.y, true)) append_point(pts, p);
            const Quaternion unit = s2.real_flag ? I1 : I2;
            for (const auto& p : slice_part(z1, z2, unit)) append_point(pts, p);
        } else {
            const Quaternion unit = s1.real_flag ? I2 : I1;
            for (const auto& p : slice_part(z1, z2, unit)) append_point(pts, p);
            for (const auto& p : arc_points(s2.x, s2.y, false)) append_point(pts, p);
        }
        append_point(pts, q2);
        return Polyline(model, pts);
    };

    const Polyline pa = build(true);
    const Polyline pb = build(false);
    const double la = curve_length(pa);
    const double lb = curve_length(pb);
    out.upper = std::min(la, lb);
    out.witness = (la <= lb) ? pa : pb;
    return out;
}

namespace {

// Minimal 2D Nelder-Mead with an evaluation budget.
struct Simplex2D {
    struct Vertex {
        double a, b, f;
    };

    template <class F>
    static Vertex minimize(F&& f, double step, int budget) {
        std::array<Vertex, 3> v{Vertex{0, 0, f(0, 0)}, Vertex{step, 0, f(step, 0)},
                                Vertex{0, step, f(0, step)}};
        int evals = 3;
        const auto order = [&] {
            std::sort(v.begin(), v.end(), [](const Vertex& x, const Vertex& y) { return x.f < y.f; });
        };
        order();
        while (evals < budget) {
            const double ca = 0.5 * (v[0].a + v[1].a), cb = 0.5 * (v[0].b + v[1].b);
            const double ra = ca + (ca - v[2].a), rb = cb + (cb - v[2].b);
            const double fr = f(ra, rb);
            ++evals;
            if (fr < v[0].f) {
                const double ea = ca + 2.0 * (ca - v[2].a), eb = cb + 2.0 * (cb - v[2].b);
                const double fe = f(ea, eb);
                ++evals;
                v[2] = (fe < fr) ? Vertex{ea, eb, fe} : Vertex{ra, rb, fr};
            } else if (fr < v[1].f) {
                v[2] = Vertex{ra, rb, fr};
            } else {
                const double ka = ca + 0.5 * (v[2].a - ca), kb = cb + 0.5 * (v[2].b - cb);
                const double fk = f(ka, kb);
                ++evals;
                if (fk < v[2].f) {
                    v[2] = Vertex{ka, kb, fk};
                } else {
                    for (int i = 1; i < 3; ++i) {
                        v[i].a = 0.5 * (v[i].a + v[0].a);
                        v[i].b = 0.5 * (v[i].b + v[0].b);
                        v[i].f = f(v[i].a, v[i].b);
                        ++evals;
                    }
                }
            }
            order();
            const double spread = std::max(std::fabs(v[2].a - v[0].a), std::fabs(v[2].b - v[0].b));
            if (spread < 1e-10 || v[0].f < 1e-14) break;
        }
        return v[0];
    }
};

struct ClosestApproach {
    double s;
    double miss;
    Quaternion point;
};

ClosestApproach closest_approach(const GeodesicTrace& trace, const Quaternion& target) {
    std::size_t best = 0;
    double bestd = 1e300;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const double d = (trace.samples[i].point - target).norm();
        if (d < bestd) {
            bestd = d;
            best = i;
        }
    }
    // Parabolic refinement of |gamma(s) - q|^2 around the discrete minimum.
    if (best == 0 || best + 1 >= trace.samples.size())
        return {trace.samples[best].s, bestd, trace.samples[best].point};
    const auto& m = trace.samples[best - 1];
    const auto& c = trace.samples[best];
    const auto& p = trace.samples[best + 1];
    const double fm = (m.point - target).norm_sq();
    const double fc = (c.point - target).norm_sq();
    const double fp = (p.point - target).norm_sq();
    const double denom = (fm - 2.0 * fc + fp);
    double t = 0.0;
    if (std::fabs(denom) > 1e-300) t = 0.5 * (fm - fp) / denom; // in units of the step
    t = std::clamp(t, -1.0, 1.0);
    const double s = c.s + t * (t > 0 ? (p.s - c.s) : (c.s - m.s));
    const Quaternion interp =
        (t >= 0) ? c.point + (p.point - c.point) * t : c.point + (c.point - m.point) * t;
    return {s, (interp - target).norm(), interp};
}

} // namespace

ShootResult shoot_distance(const Quaternion& q1, const Quaternion& q2, int budget, Model model) {
    if (boundary_margin(model, q1) < 1e-3 || boundary_margin(model, q2) < 1e-3)
        throw DomainViolation("shooting endpoints must keep a 1e-3 boundary margin");

    ShootResult out;
    if ((q1 - q2).norm() < 1e-14) {
        out.converged = true;
        return out;
    }
    const DistanceBounds bounds = distance_bounds(q1, q2, model);
    const double L = bounds.upper * 1.2 + 0.05;

    // Orthonormal chart basis {1, I1, circle direction} at q1.
    const SlicePoint s1 = slice_decompose(q1);
    const SlicePoint s2 = slice_decompose(q2);
    const Quaternion e1 = Quaternion::one();
    const Quaternion e2 = s1.I.q();
    Quaternion e3;
    if (auto dir = circle_direction(s1.I.q(), s2.I.q()))
        e3 = *dir;
    else
        e3 = any_orthogonal_unit(s1.I.q());

    // Initial direction from the witness curve's first segment.
    Quaternion d0 = bounds.witness.points[1] - bounds.witness.points[0];
    Quaternion u1 = e1 * dot(d0, e1) + e2 * dot(d0, e2) + e3 * dot(d0, e3);
    if (u1.norm() < 1e-12) u1 = e1;
    u1 = u1 / u1.norm();
    Quaternion u2 = e2 - u1 * dot(u1, e2);
    if (u2.norm() < 1e-8) u2 = e1 - u1 * dot(u1, e1);
    if (u2.norm() < 1e-8) u2 = e3 - u1 * dot(u1, e3);
    u2 = u2 / u2.norm();
    Quaternion u3 = e3 - u1 * dot(u1, e3) - u2 * dot(u2, e3);
    if (u3.norm() < 1e-8) {
        u3 = e1 - u1 * dot(u1, e1) - u2 * dot(u2, e1);
        if (u3.norm() < 1e-8) u3 = e2 - u1 * dot(u1, e2) - u2 * dot(u2, e2);
    }
    u3 = u3 / u3.norm();

    const auto launch = [&](double al, double be) {
        return u1 * (std::cos(al)) + (u2 * std::cos(be) + u3 * std::sin(be)) * std::sin(al);
    };

    IntegrateOptions coarse;
    coarse.tol = 1e-9;
    coarse.max_step = 0.03;
    const auto objective = [&](double al, double be) {
        try {
            const GeodesicTrace t = cartesian_geodesic(q1, launch(al, be), L, model, coarse);
            return closest_approach(t, q2).miss;
        } catch (const DomainViolation&) {
            return 1e6;
        } catch (const NoConvergence&) {
            return 1e6;
        }
    };

    const auto best = Simplex2D::minimize(objective, 0.35, budget);

    IntegrateOptions fine;
    fine.tol = 1e-12;
    fine.max_step = 0.01;
    out.trace = cartesian_geodesic(q1, launch(best.a, best.b), L, model, fine);
    const ClosestApproach hit = closest_approach(out.trace, q2);
    out.miss = hit.miss;
    out.candidate = hit.s + metric_length(model, q2, hit.point - q2);
    out.converged = hit.miss < 1e-6 * (1.0 + q2.norm());
    return out;
}

namespace {

std::vector<Quaternion> resample_uniform(const std::vector<Quaternion>& pts, int segments) {
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < pts.size(); ++i)
        cum.push_back(cum.back() + (pts[i] - pts[i - 1]).norm());
    const double total = cum.back();
    std::vector<Quaternion> out;
    out.reserve(segments + 1);
    std::size_t j = 0;
    for (int k = 0; k <= segments; ++k) {
        const double target = total * k / segments;
        while (j + 1 < cum.size() && cum[j + 1] < target) ++j;
        if (j + 1 >= pts.size()) {
            out.push_back(pts.back());
            continue;
        }
        const double seg = cum[j + 1] - cum[j];
        const double t = (seg > 0) ? (target - cum[j]) / seg : 0.0;
        out.push_back(pts[j] + (pts[j + 1] - pts[j]) * t);
    }
    return out;
}

void clamp_interior(Model model, Quaternion& p) {
    if (model == Model::ball) {
        const double n = p.norm();
        if (n > 1.0 - 1e-6) p = p * ((1.0 - 1e-6) / n);
    } else if (p.re() < 1e-6) {
        p.x0 = 1e-6;
    }
}

double segment_len(Model model, const Quaternion& a, const Quaternion& b) {
    return metric_length(model, (a + b) * 0.5, b - a);
}

} // namespace

Polyline polyline_relax(const Quaternion& q1, const Quaternion& q2, int segments, Model model,
                        const Polyline* init, const RelaxOptions& opts) {
    if (segments < 2) throw DomainViolation("relaxation needs at least two segments");
    std::vector<Quaternion> pts;
    if (init && init->points.size() >= 2) {
        pts = resample_uniform(init->points, segments);
    } else {
        for (int k = 0; k <= segments; ++k)
            pts.push_back(q1 + (q2 - q1) * (static_cast<double>(k) / segments));
    }
    pts.front() = q1;
    pts.back() = q2;
    for (auto& p : pts) clamp_interior(model, p);

    const auto total_length = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            acc += segment_len(model, pts[i], pts[i + 1]);
        return acc;
    };

    std::vector<double> step(pts.size(), 0.02);
    double total = total_length();
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            const auto local = [&](const Quaternion& p) {
                return segment_len(model, pts[i - 1], p) + segment_len(model, p, pts[i + 1]);
            };
            const double f0 = local(pts[i]);
            const double h = 1e-7 * (1.0 + pts[i].norm());
            Quaternion grad{};
            for (int dir = 0; dir < 4; ++dir) {
                const Quaternion e = basis_vector(dir);
                Quaternion pp = pts[i] + e * h, pm = pts[i] - e * h;
                clamp_interior(model, pp);
                clamp_interior(model, pm);
                const double g = (local(pp) - local(pm)) / (2.0 * h);
                grad += e * g;
            }
            const double gn = grad.norm();
            if (gn < 1e-14) continue;
            Quaternion trial = pts[i] - grad * (step[i] / gn);
            clamp_interior(model, trial);
            if (local(trial) < f0) {
                pts[i] = trial;
                step[i] = std::min(step[i] * 1.3, 0.1);
            } else {
                step[i] *= 0.5;
            }
        }
        const double now = total_length();
        if (total - now < opts.improvement_tol * std::max(total, 1e-12)) {
            // Also require the steps to have become small so a stalled sweep
            // with large steps does not fake convergence.
            double max_step = 0.0;
            for (double s : step) max_step = std::max(max_step, s);
            if (max_step < 1e-3 || sweep > 50) return Polyline(model, pts);
        }
        total = now;
    }
    throw NoConvergence("curve relaxation did not converge within the sweep budget");
}

ReturnEvent injectivity_return(double rho0, double tol) {
    if (rho0 <= 1e-6) throw DomainViolation("return length is defined away from the axis");
    const double psi0 = 0.5 * std::tanh(2.0 * rho0);
    // Tangential unit-speed launch; theta increases monotonically.
    const SurfaceState init{rho0, 0.0, 0.0, 1.0 / psi0};
    const double clairaut = init.clairaut(); // = psi0
    const double cap = 2.0 * kPi / (4.0 * clairaut) + 1.0;
    const auto trace = surface_geodesic(init, cap, tol, 0.005);
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].state.theta >= 2.0 * kPi) {
            const auto& a = trace[i - 1];
            const auto& b = trace[i];
            const double t =
                (2.0 * kPi - a.state.theta) / (b.state.theta - a.state.theta);
            return ReturnEvent{a.s + t * (b.s - a.s),
                               a.state.rho + t * (b.state.rho - a.state.rho)};
        }
    }
    throw NoConvergence("geodesic failed to return to the radial ray within the cap");
}

} // namespace qhgeo
