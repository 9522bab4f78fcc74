#include "qhgeo/series.hpp"

#include <algorithm>
#include <cmath>

namespace qhgeo {

namespace {

void strip_trailing_zeros(std::vector<Quaternion>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

} // namespace

RegularSeries::RegularSeries(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) {
    strip_trailing_zeros(coeffs_);
    if (!coeffs_.empty() && coeffs_.size() - 1 > kDegreeCap)
        throw DegreeCapExceeded("series degree exceeds cap");
}

RegularSeries::RegularSeries(std::initializer_list<Quaternion> coeffs)
    : RegularSeries(std::vector<Quaternion>(coeffs)) {}

double RegularSeries::max_coeff_norm() const {
    double m = 0.0;
    for (const auto& a : coeffs_) m = std::max(m, a.norm());
    return m;
}

Quaternion eval(const RegularSeries& f, const Quaternion& q) {
    if (f.is_zero()) return Quaternion::zero();
    Quaternion r = f.coeffs().back();
    for (std::size_t n = f.size() - 1; n-- > 0;) r = q * r + f.coeffs()[n];
    return r;
}

RegularSeries star_mul(const RegularSeries& f, const RegularSeries& g, std::size_t degree_cap) {
    if (f.is_zero() || g.is_zero()) return RegularSeries{};
    const std::size_t deg = f.degree() + g.degree();
    if (deg > degree_cap) throw DegreeCapExceeded("star product exceeds degree cap");
    std::vector<Quaternion> c(deg + 1, Quaternion::zero());
    for (std::size_t k = 0; k < f.size(); ++k)
        for (std::size_t l = 0; l < g.size(); ++l) c[k + l] += f.coeffs()[k] * g.coeffs()[l];
    return RegularSeries(std::move(c));
}

RegularSeries operator+(const RegularSeries& f, const RegularSeries& g) {
    std::vector<Quaternion> c(std::max(f.size(), g.size()), Quaternion::zero());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f.coeff(n) + g.coeff(n);
    return RegularSeries(std::move(c));
}

RegularSeries operator-(const RegularSeries& f, const RegularSeries& g) {
    std::vector<Quaternion> c(std::max(f.size(), g.size()), Quaternion::zero());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f.coeff(n) - g.coeff(n);
    return RegularSeries(std::move(c));
}

RegularSeries conj_series(const RegularSeries& f) {
    std::vector<Quaternion> c(f.coeffs());
    for (auto& a : c) a = a.conj();
    return RegularSeries(std::move(c));
}

RegularSeries symmetrization(const RegularSeries& f) { return star_mul(f, conj_series(f)); }

RegularSeries star_inverse(const RegularSeries& f, std::size_t M) {
    if (f.coeff(0).norm() < 1e-14)
        throw NonInvertibleError("star inverse requires a nonzero constant term");
    // Real coefficients of f^s = f * f^c; keep only degrees <= M.
    const RegularSeries fs = symmetrization(f);
    std::vector<double> s(M + 1, 0.0);
    for (std::size_t n = 0; n <= M; ++n) s[n] = fs.coeff(n).x0;
    // Ordinary reciprocal of the real series s, truncated at degree M.
    std::vector<double> t(M + 1, 0.0);
    t[0] = 1.0 / s[0];
    for (std::size_t n = 1; n <= M; ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += s[k] * t[n - k];
        t[n] = -acc / s[0];
    }
    // h = reciprocal(f^s) * f^c, truncated at degree M.
    const RegularSeries fc = conj_series(f);
    std::vector<Quaternion> h(M + 1, Quaternion::zero());
    for (std::size_t n = 0; n <= M; ++n)
        for (std::size_t k = 0; k <= n && k < fc.size(); ++k) h[n] += t[n - k] * fc.coeffs()[k];
    return RegularSeries(std::move(h));
}

PointwiseStarIdentity star_pointwise_identity(const RegularSeries& f, const RegularSeries& g,
                                              const Quaternion& q) {
    const Quaternion lhs = eval(star_mul(f, g), q);
    const Quaternion fq = eval(f, q);
    if (fq.is_zero()) throw ZeroAtPointError("f vanishes at the evaluation point");
    const Quaternion inner = fq.inverse() * q * fq;
    return PointwiseStarIdentity{lhs, fq * eval(g, inner)};
}

Quaternion T_f(const RegularSeries& f, const Quaternion& q) {
    const Quaternion fcq = eval(conj_series(f), q);
    if (fcq.norm() < 1e-13) throw SingularAtError("f^c vanishes at the conjugation point");
    return fcq.inverse() * q * fcq;
}

Quaternion regular_quotient(const RegularSeries& f, const RegularSeries& g, const Quaternion& q) {
    // The quotient needs q outside the zero set of f^s = f*f^c, where
    // f(T_f(q)) would vanish.
    if (eval(symmetrization(f), q).norm() < 1e-13)
        throw SingularAtError("point lies in the zero set of f*f^c");
    const Quaternion tq = T_f(f, q);
    return eval(f, tq).inverse() * eval(g, tq);
}

RegularSeries slice_derivative(const RegularSeries& f) {
    if (f.size() <= 1) return RegularSeries{};
    std::vector<Quaternion> c(f.size() - 1);
    for (std::size_t n = 1; n < f.size(); ++n) c[n - 1] = static_cast<double>(n) * f.coeffs()[n];
    return RegularSeries(std::move(c));
}

Quaternion spherical_derivative(const RegularSeries& f, const Quaternion& q) {
    if (q.im_norm() < real_axis_eps(q)) {
        // Removable limit sum_n n x^{n-1} a_n, the slice derivative at x.
        return eval(slice_derivative(f), Quaternion{q.x0});
    }
    const Quaternion diff = q - q.conj();
    return diff.inverse() * (eval(f, q) - eval(f, q.conj()));
}

Quaternion representation_formula(const RegularSeries& f, double x, double y,
                                  const ImaginaryUnit& I, const ImaginaryUnit& J) {
    const Quaternion fp = eval(f, Quaternion{x} + I.q() * y);
    const Quaternion fm = eval(f, Quaternion{x} - I.q() * y);
    return 0.5 * (fp + fm) + J.q() * (I.q() * 0.5) * (fm - fp);
}

MoebiusMap::MoebiusMap(const Quaternion& a_, const Quaternion& u_) : a(a_), u(u_) {
    if (a.norm() >= 1.0 - 1e-12) throw DomainViolation("Moebius parameter must satisfy |a| < 1");
    if (std::fabs(u.norm() - 1.0) > 1e-14) throw DomainViolation("Moebius factor must be unitary");
}

Quaternion moebius_eval(const MoebiusMap& m, const Quaternion& q) {
    if (q.norm() >= 1.0) throw DomainViolation("Moebius map evaluated outside the unit ball");
    const RegularSeries f{Quaternion::one(), -m.a.conj()}; // 1 - q conj(a)
    const RegularSeries g{-m.a, Quaternion::one()};        // q - a
    return regular_quotient(f, g, q) * m.u;
}

Quaternion kernel_ball(const Quaternion& w, const Quaternion& q) {
    if (q.norm() * w.norm() >= 1.0)
        throw DomainViolation("ball kernel requires |q||w| < 1");
    const Quaternion denom = Quaternion::one() - 2.0 * w.re() * q + q * q * w.norm_sq();
    return denom.inverse() * (Quaternion::one() - q * w);
}

Quaternion kernel_halfspace(const Quaternion& w, const Quaternion& q) {
    if (w.re() <= 0.0 || q.re() <= 0.0)
        throw DomainViolation("half-space kernel requires Re(w) > 0 and Re(q) > 0");
    const Quaternion denom = q * q + 2.0 * w.re() * q + Quaternion{w.norm_sq()};
    return denom.inverse() * (q + w);
}

Quaternion cayley(const Quaternion& q) {
    if (q.norm() >= 1.0) throw DomainViolation("Cayley map defined on the open unit ball");
    return (Quaternion::one() - q).inverse() * (Quaternion::one() + q);
}

Quaternion cayley_inv(const Quaternion& q) {
    if (q.re() <= 0.0) throw DomainViolation("inverse Cayley map defined on the right half-space");
    return (Quaternion::one() + q).inverse() * (q - Quaternion::one());
}

} // namespace qhgeo
