#include "qhgeo/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "qhgeo/slice.hpp"

namespace qhgeo {

Quaternion inner_product(const RegularSeries& f, const RegularSeries& g) {
    Quaternion acc = Quaternion::zero();
    const std::size_t n = std::max(f.size(), g.size());
    for (std::size_t k = 0; k < n; ++k) acc += g.coeff(k).conj() * f.coeff(k);
    return acc;
}

double delta(const Quaternion& w, const Quaternion& z, DeltaMethod method) {
    if (w.norm() >= 1.0 || z.norm() >= 1.0)
        throw DomainViolation("delta is defined on the open unit ball");
    if (method == DeltaMethod::moebius) {
        const MoebiusMap m(w);
        return moebius_eval(m, z).norm();
    }
    // |<k_w, k_z>|^2 = |k_w(z)|^2, |k_w|^2 = 1/(1-|w|^2).
    const double inner2 = kernel_ball(w, z).norm_sq();
    const double s = 1.0 - inner2 * (1.0 - w.norm_sq()) * (1.0 - z.norm_sq());
    return std::sqrt(std::max(s, 0.0));
}

KernelNorms kernel_norms(const Quaternion& w) {
    const double r2 = w.norm_sq();
    if (r2 >= 1.0) throw DomainViolation("kernel norms require |w| < 1");
    const double omr2 = 1.0 - r2;
    const double y = w.im_norm();
    // |1 - w^2|^2 = (1 - |w|^2)^2 + 4 y^2.
    const double one_minus_w2_sq = omr2 * omr2 + 4.0 * y * y;

    KernelNorms n{};
    n.k_norm2 = 1.0 / omr2;
    n.dc_norm2 = (1.0 + r2) / (omr2 * omr2 * omr2);
    n.dc_at_w2 = r2 / (omr2 * omr2 * omr2 * omr2);
    n.ds_at_w2 = r2 / (omr2 * omr2 * one_minus_w2_sq);
    if (y < 1e-4) {
        // Removable limit of the displayed formula on the real axis.
        n.ds_norm2 = (1.0 + r2) / (omr2 * omr2 * omr2);
    } else {
        // (1/|w - conj w|^2) (2/(1-|w|^2) - 2 Re(1/(1-w^2))).
        const double re_w2 = w.x0 * w.x0 - y * y;
        const double re_inv = (1.0 - re_w2) / one_minus_w2_sq;
        n.ds_norm2 = (2.0 / omr2 - 2.0 * re_inv) / (4.0 * y * y);
    }
    return n;
}

RkhsCoefficients rkhs_metric_coefficients(const KernelNorms& n) {
    const double num1 = n.k_norm2 * n.dc_norm2 - n.dc_at_w2;
    const double num2 = n.k_norm2 * n.ds_norm2 - n.ds_at_w2;
    if (num1 < -1e-12 || num2 < -1e-12)
        throw NegativeCoefficientError("metric coefficient numerator below -1e-12");
    const double k4 = n.k_norm2 * n.k_norm2;
    return RkhsCoefficients{std::max(num1, 0.0) / k4, std::max(num2, 0.0) / k4};
}

namespace {

// Product quadrature sum_I sum_t wS wt g(t, I).
double sphere_product_quadrature(const std::function<double(double, const Quaternion&)>& g,
                                 const Rule1D& trule, const SphereRule& srule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < srule.nodes.size(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < trule.nodes.size(); ++j)
            inner += trule.weights[j] * g(trule.nodes[j], srule.nodes[i]);
        acc += srule.weights[i] * inner;
    }
    return acc;
}

double converged_value(double coarse, double fine, const char* what, QuadratureResult* info,
                       double tol = 1e-6) {
    const double err = std::fabs(fine - coarse) / std::max(1.0, std::fabs(fine));
    if (info) {
        info->value = fine;
        info->refinement_error = err;
    }
    if (err > tol) throw QuadratureNotConverged(what);
    return fine;
}

} // namespace

double sphere_boundary_integral(const RegularSeries& f, QuadratureResult* info) {
    const auto integrand = [&](double t, const Quaternion& I) {
        const Quaternion u = from_polar(1.0, t, ImaginaryUnit(I));
        return eval(f, u).norm_sq();
    };
    const double coarse =
        0.25 * sphere_product_quadrature(integrand, gauss_legendre(64, 0.0, kPi), lebedev26());
    const double fine =
        0.25 * sphere_product_quadrature(integrand, gauss_legendre(128, 0.0, kPi), lebedev50());
    return converged_value(coarse, fine, "sphere boundary integral", info);
}

double sphere_limit_norm(const RegularSeries& f, double r, QuadratureResult* info) {
    if (r <= 0.0 || r >= 1.0) throw DomainViolation("sphere_limit_norm requires 0 < r < 1");
    const double omr2 = 1.0 - r * r;
    const auto density = [&](double t) {
        const double st = std::sin(t);
        return r * r * r * st * st / (omr2 * (omr2 * omr2 + 4.0 * r * r * st * st));
    };
    const auto weighted = [&](double t, const Quaternion& I) {
        const Quaternion u = from_polar(r, t, ImaginaryUnit(I));
        return eval(f, u).norm_sq() * density(t);
    };
    const auto volume_only = [&](double t, const Quaternion&) { return density(t); };

    // The density has boundary layers of width ~(1-r^2) at t = 0 and pi.
    const double min_w = std::max(omr2 / 8.0, 1e-5);
    const auto edges = edges_refined_toward_ends(0.0, kPi, min_w);
    const Rule1D coarse_t = composite_gauss_legendre(edges, 16);
    const Rule1D fine_t = composite_gauss_legendre(edges, 32);

    const double coarse = sphere_product_quadrature(weighted, coarse_t, lebedev26()) /
                          sphere_product_quadrature(volume_only, coarse_t, lebedev26());
    const double fine = sphere_product_quadrature(weighted, fine_t, lebedev50()) /
                        sphere_product_quadrature(volume_only, fine_t, lebedev50());
    return omr2 * converged_value(coarse, fine, "sphere limit norm", info);
}

LaplaceDensity LaplaceDensity::exponential(const Quaternion& decay, int power,
                                           const Quaternion& scale) {
    if (decay.re() <= 0.0)
        throw DomainViolation("Laplace density requires Re(decay) > 0");
    LaplaceDensity F;
    F.decay = decay;
    F.power = power;
    F.scale = scale;
    return F;
}

Quaternion LaplaceDensity::value(double zeta) const {
    if (sampled) throw DomainViolation("sampled density has no pointwise closed form");
    return std::pow(zeta, power) * exp(decay * -zeta) * scale;
}

double LaplaceDensity::norm_sq() const {
    if (sampled) {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * values[i].norm_sq();
        return acc;
    }
    // int zeta^{2m} e^{-2 Re(s) zeta} dzeta = (2m)! / (2 Re s)^{2m+1}.
    const double x = 2.0 * decay.re();
    double fact = 1.0;
    for (int k = 2; k <= 2 * power; ++k) fact *= k;
    return fact / std::pow(x, 2 * power + 1) * scale.norm_sq();
}

double LaplaceDensity::tail_cutoff() const {
    const double x = decay.re();
    double z = (40.0 + 3.0 * power) / x;
    while (std::pow(z, power) * std::exp(-x * z) > 1e-18 * std::max(1.0, std::pow(power / x, power)))
        z *= 1.5;
    return z;
}

namespace {

// One quadrature pass of int e^{-zeta q} F(zeta) dzeta at a fixed order.
// Panels grow geometrically from 0 but stay below the oscillation scale.
Quaternion laplace_pass(const LaplaceDensity& F, const Quaternion& q, int nodes_per_panel) {
    const double zmax = F.tail_cutoff();
    const double omega = q.im_norm() + F.decay.im_norm();
    const double width = std::min(1.0 / (0.1 + q.re() + F.decay.re()), 4.0 / (1.0 + omega));
    std::vector<double> edges{0.0};
    double w = std::min(width, 0.25);
    double pos = 0.0;
    while (pos + w < zmax) {
        pos += w;
        edges.push_back(pos);
        w = std::min(w * 2.0, width);
    }
    edges.push_back(zmax);
    const Rule1D rule = composite_gauss_legendre(edges, nodes_per_panel);
    Quaternion acc = Quaternion::zero();
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double z = rule.nodes[i];
        acc += rule.weights[i] * (exp(q * -z) * F.value(z));
    }
    return acc;
}

} // namespace

Quaternion laplace_eval(const LaplaceDensity& F, const Quaternion& q, double* refinement) {
    if (q.re() <= 0.0) throw DomainViolation("Laplace evaluation requires Re(q) > 0");
    if (F.sampled) {
        Quaternion acc = Quaternion::zero();
        for (std::size_t i = 0; i < F.nodes.size(); ++i)
            acc += F.weights[i] * (exp(q * -F.nodes[i]) * F.values[i]);
        if (refinement) *refinement = 0.0;
        return acc;
    }
    const Quaternion coarse = laplace_pass(F, q, 8);
    const Quaternion fine = laplace_pass(F, q, 16);
    const double err = (fine - coarse).norm() / std::max(1.0, fine.norm());
    if (refinement) *refinement = err;
    if (err > 1e-8) throw QuadratureNotConverged("laplace_eval refinement disagreement");
    return fine;
}

double halfspace_boundary_integral(const LaplaceDensity& F, QuadratureResult* info,
                                   double eps_bd) {
    const double ymax = 64.0;

    // f is regular, hence affine in I on each sphere x + yS: two evaluations
    // per y determine f(x + yJ) = b + Jc for every J (Representation Formula).
    const auto sphere_avg = [&](double y, const SphereRule& srule, int order) {
        const Quaternion qp = Quaternion{eps_bd} + Quaternion::i() * y;
        const Quaternion qm = Quaternion{eps_bd} - Quaternion::i() * y;
        const Quaternion fp = F.sampled ? laplace_eval(F, qp) : laplace_pass(F, qp, order);
        const Quaternion fm = F.sampled ? laplace_eval(F, qm) : laplace_pass(F, qm, order);
        const Quaternion b = 0.5 * (fp + fm);
        const Quaternion c = Quaternion::i() * 0.5 * (fm - fp);
        double acc = 0.0;
        for (std::size_t i = 0; i < srule.nodes.size(); ++i)
            acc += srule.weights[i] * (b + srule.nodes[i] * c).norm_sq();
        return acc / 8.0;
    };

    const auto integrate = [&](int nodes_per_panel, const SphereRule& srule, int order) {
        const Rule1D rule = composite_gauss_legendre(
            edges_geometric_from_zero(ymax, 0.5), nodes_per_panel);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * sphere_avg(rule.nodes[i], srule, order);
        // Tail estimate from the C/y^2 asymptote of |f|^2.
        acc += ymax * sphere_avg(ymax, srule, order);
        return acc;
    };

    const double coarse = integrate(16, lebedev26(), 8);
    const double fine = integrate(32, lebedev50(), 16);
    return converged_value(coarse, fine, "half-space boundary integral", info);
}

RescalingCheck donatini_rescaling_check(const Quaternion& w, const Quaternion& z) {
    if (w.re() <= 0.0 || z.re() <= 0.0)
        throw DomainViolation("rescaling check requires points of the right half-space");
    const Quaternion lhs = kernel_ball(cayley_inv(w), cayley_inv(z));
    const Quaternion rhs =
        0.5 * ((Quaternion::one() + z) * kernel_halfspace(w, z) * (Quaternion::one() + w.conj()));
    return RescalingCheck{lhs, rhs};
}

} // namespace qhgeo
