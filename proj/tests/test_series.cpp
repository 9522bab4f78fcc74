#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qhgeo/rng.hpp"
#include "qhgeo/series.hpp"

using namespace qhgeo;
using cplx = std::complex<double>;

namespace {

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

// Random polynomial with coefficients shrinking like decay^n.
RegularSeries random_poly(CounterRng& rng, std::size_t deg, double decay = 1.0) {
    std::vector<Quaternion> c(deg + 1);
    double s = 1.0;
    for (auto& a : c) {
        a = rng.gaussian_quaternion() * s;
        s *= decay;
    }
    return RegularSeries(std::move(c));
}

// Random polynomial that is zero-free on the closed unit ball: unit constant
// term dominating a geometric tail.  Keeps star-reciprocal coefficients
// bounded so residual checks see round-off, not growth.
RegularSeries random_invertible_poly(CounterRng& rng, std::size_t deg) {
    std::vector<Quaternion> c(deg + 1);
    c[0] = rng.unit_quaternion();
    double s = 0.5 * 0.35;
    for (std::size_t n = 1; n <= deg; ++n) {
        c[n] = rng.ball_point(s);
        s *= 0.35;
    }
    return RegularSeries(std::move(c));
}

double coeff_dist(const RegularSeries& f, const RegularSeries& g) {
    double m = 0.0;
    for (std::size_t n = 0; n <= std::max(f.degree(), g.degree()); ++n)
        m = std::max(m, (f.coeff(n) - g.coeff(n)).norm());
    return m;
}

// Embed a slice complex number x + yI into H.
Quaternion embed(const cplx& z, const ImaginaryUnit& I) {
    return Quaternion{z.real()} + I.q() * z.imag();
}

} // namespace

TEST_CASE("evaluation") {
    const RegularSeries f{Quaternion::one(), Quaternion::i()}; // 1 + q i
    CHECK(eval(f, Quaternion::j()) == Quaternion::one() - Quaternion::k()); // 1 + ji = 1 - k

    const RegularSeries sq{Quaternion::zero(), Quaternion::zero(), Quaternion::one()};
    CHECK(qdist(eval(sq, Quaternion::j() * 0.5), Quaternion{-0.25}) < 1e-16);

    CounterRng rng = CounterRng::substream(23, "series-eval", 0);
    const RegularSeries g = random_poly(rng, 6);
    CHECK(eval(g, Quaternion::zero()) == g.coeff(0));
}

TEST_CASE("evaluation matches complex arithmetic on slices (Splitting Lemma)") {
    // Coefficients a_n = alpha_n + beta_n J with alpha, beta in L_I give
    // f(z) = F(z) + G(z) J with F, G holomorphic on the slice.
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
        CounterRng rng = CounterRng::substream(29, "series-split", trial);
        const ImaginaryUnit I = rng.unit_imaginary();
        // J unit imaginary orthogonal to I, K = I J completes the frame.
        ImaginaryUnit J = rng.unit_imaginary();
        Quaternion jv = J.q() - I.q() * dot_im(J.q(), I.q());
        if (jv.im_norm() < 1e-3) continue;
        J = ImaginaryUnit(jv);
        const std::size_t deg = 5;
        std::vector<cplx> alpha(deg + 1), beta(deg + 1);
        std::vector<Quaternion> coeffs(deg + 1);
        for (std::size_t n = 0; n <= deg; ++n) {
            alpha[n] = {rng.normal(), rng.normal()};
            beta[n] = {rng.normal(), rng.normal()};
            coeffs[n] = embed(alpha[n], I) + embed(beta[n], I) * J.q();
        }
        const RegularSeries f{coeffs};
        const cplx z{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        cplx F = 0, G = 0, zn = 1;
        for (std::size_t n = 0; n <= deg; ++n) {
            F += zn * alpha[n];
            G += zn * beta[n];
            zn *= z;
        }
        const Quaternion expected = embed(F, I) + embed(G, I) * J.q();
        worst = std::max(worst, qdist(eval(f, embed(z, I)), expected));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("star product") {
    const RegularSeries f{Quaternion::one(), -Quaternion::i()};
    const RegularSeries g{Quaternion::one(), -Quaternion::j()};
    const RegularSeries fg = star_mul(f, g);
    CHECK(fg.coeff(0) == Quaternion::one());
    CHECK(fg.coeff(1) == -(Quaternion::i() + Quaternion::j()));
    CHECK(fg.coeff(2) == Quaternion::k()); // (-i)(-j) = ij = k

    CounterRng rng = CounterRng::substream(31, "series-star", 0);
    const RegularSeries h = random_poly(rng, 7);
    CHECK(coeff_dist(star_mul(h, RegularSeries::one()), h) == 0.0);

    const RegularSeries p{-Quaternion::i(), Quaternion::one()};
    const RegularSeries q{-Quaternion::j(), Quaternion::one()};
    const RegularSeries pq = star_mul(p, q);
    CHECK(pq.coeff(0) == Quaternion::k());
    CHECK(pq.coeff(1) == -(Quaternion::i() + Quaternion::j()));
    CHECK(pq.coeff(2) == Quaternion::one());

    CHECK_THROWS_AS(star_mul(random_poly(rng, 300), random_poly(rng, 300)), DegreeCapExceeded);
}

TEST_CASE("star product associativity") {
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng rng = CounterRng::substream(37, "series-assoc", trial);
        const RegularSeries f = random_poly(rng, 8);
        const RegularSeries g = random_poly(rng, 8);
        const RegularSeries h = random_poly(rng, 8);
        const RegularSeries a = star_mul(star_mul(f, g), h);
        const RegularSeries b = star_mul(f, star_mul(g, h));
        worst = std::max(worst, coeff_dist(a, b) / std::max(1.0, a.max_coeff_norm()));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pointwise star-product identity") {
    CounterRng rng = CounterRng::substream(41, "series-trasf", 0);
    const RegularSeries g = random_poly(rng, 6);
    const Quaternion q0 = rng.interior_ball_point(0.2);
    const auto c = star_pointwise_identity(RegularSeries::one(), g, q0);
    CHECK(qdist(c.lhs, eval(g, q0)) < 1e-14);
    CHECK(qdist(c.rhs, eval(g, q0)) < 1e-14);

    // f = q - i, g = q - j at q = j, against direct quaternion arithmetic.
    const RegularSeries f{-Quaternion::i(), Quaternion::one()};
    const RegularSeries gj{-Quaternion::j(), Quaternion::one()};
    const auto r = star_pointwise_identity(f, gj, Quaternion::j());
    const Quaternion fj = Quaternion::j() - Quaternion::i();
    const Quaternion inner = fj.inverse() * Quaternion::j() * fj;
    CHECK(qdist(r.rhs, fj * (inner - Quaternion::j())) < 1e-15);
    CHECK(qdist(r.lhs, r.rhs) < 1e-14);

    // f(q) = 0 branch: the star product itself vanishes there.
    CHECK_THROWS_AS(star_pointwise_identity(f, gj, Quaternion::i()), ZeroAtPointError);
    CHECK(eval(star_mul(f, gj), Quaternion::i()).norm() < 1e-15);

    double worst = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        CounterRng r2 = CounterRng::substream(43, "series-trasf-prop", trial);
        const RegularSeries a = random_poly(r2, 5);
        const RegularSeries b = random_poly(r2, 5);
        const Quaternion q = r2.interior_ball_point(0.2);
        if (eval(a, q).norm() < 1e-6) continue;
        const auto id = star_pointwise_identity(a, b, q);
        worst = std::max(worst, qdist(id.lhs, id.rhs) / (1.0 + id.lhs.norm()));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("conjugate series and symmetrization") {
    // f = 1 - q conj(w) with w = i/2: f^s = 1 + q^2/4.
    const RegularSeries f{Quaternion::one(), (Quaternion::i() * 0.5).conj() * -1.0};
    const RegularSeries fs = symmetrization(f);
    CHECK(qdist(fs.coeff(0), Quaternion::one()) < 1e-16);
    CHECK(fs.coeff(1).norm() < 1e-16);
    CHECK(qdist(fs.coeff(2), Quaternion{0.25}) < 1e-16);

    const RegularSeries realf{Quaternion{1.5}, Quaternion{-2.0}, Quaternion{0.25}};
    CHECK(coeff_dist(conj_series(realf), realf) == 0.0);

    const RegularSeries g{Quaternion::i(), Quaternion::j()};
    CHECK(conj_series(g).coeff(0) == -Quaternion::i());
    CHECK(conj_series(g).coeff(1) == -Quaternion::j());

    double worstim = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng rng = CounterRng::substream(47, "series-symm", trial);
        const RegularSeries h = random_poly(rng, 8);
        const RegularSeries hs = symmetrization(h);
        const double scale = h.max_coeff_norm() * h.max_coeff_norm();
        for (std::size_t n = 0; n <= hs.degree(); ++n)
            worstim = std::max(worstim, hs.coeff(n).im().norm() / scale);
    }
    CHECK(worstim < 1e-13);
}

TEST_CASE("star inverse") {
    const RegularSeries f{Quaternion::one(), -Quaternion::i()};
    const RegularSeries h = star_inverse(f, 4);
    CHECK(h.coeff(0) == Quaternion::one());
    CHECK(h.coeff(1) == Quaternion::i());
    CHECK(h.coeff(2) == -Quaternion::one());
    CHECK(h.coeff(3) == -Quaternion::i());
    CHECK(h.coeff(4) == Quaternion::one());
    const RegularSeries resid = star_mul(f, h) - RegularSeries::one();
    for (std::size_t n = 0; n <= 4; ++n) CHECK(resid.coeff(n).norm() < 1e-15);

    const RegularSeries c{Quaternion{0, 2, 0, 0}};
    CHECK(qdist(star_inverse(c, 3).coeff(0), Quaternion::i() * -0.5) < 1e-16);

    CHECK_THROWS_AS(star_inverse(RegularSeries::identity(), 4), NonInvertibleError);

    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng rng = CounterRng::substream(53, "series-inv", trial);
        const RegularSeries g = random_invertible_poly(rng, 8);
        const std::size_t M = 16;
        const RegularSeries inv = star_inverse(g, M);
        const RegularSeries r = star_mul(g, inv) - RegularSeries::one();
        for (std::size_t n = 0; n <= M; ++n) worst = std::max(worst, r.coeff(n).norm());
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("T_f and regular quotient") {
    const RegularSeries f{Quaternion::one(), -Quaternion::i()}; // 1 - q i
    CHECK(qdist(T_f(f, Quaternion::j()), -Quaternion::i()) < 1e-15);

    CounterRng rng = CounterRng::substream(59, "series-tf", 0);
    const RegularSeries g = random_poly(rng, 5);
    const Quaternion x{0.37};
    CHECK(qdist(T_f(g, x), x) < 1e-14);
    CHECK(qdist(regular_quotient(RegularSeries::one(), g, x), eval(g, x)) < 1e-14);

    // f^s = 1 + q^2 vanishes on the whole sphere S: the quotient is singular
    // there even though T_f itself is still defined.
    const RegularSeries gq = random_poly(rng, 3);
    CHECK_THROWS_AS(regular_quotient(f, gq, Quaternion::j()), SingularAtError);
}

TEST_CASE("derivatives") {
    const RegularSeries sq{Quaternion::zero(), Quaternion::zero(), Quaternion::one()};
    const RegularSeries dsq = slice_derivative(sq);
    CHECK(dsq.degree() == 1);
    CHECK(dsq.coeff(1) == Quaternion{2.0});
    CHECK(slice_derivative(RegularSeries{Quaternion{3.0}}).is_zero());

    // Termwise: f = sum q^n wbar^n.
    const Quaternion w = Quaternion{0.2, 0.3, -0.1, 0.4};
    std::vector<Quaternion> c(6);
    Quaternion wn = Quaternion::one();
    for (auto& a : c) {
        a = wn;
        wn = wn * w.conj();
    }
    const RegularSeries f{c};
    const RegularSeries df = slice_derivative(f);
    for (std::size_t n = 1; n < 6; ++n)
        CHECK(qdist(df.coeff(n - 1), static_cast<double>(n) * f.coeff(n)) < 1e-15);

    // Spherical derivative of q^n at real x is n x^{n-1}.
    for (int n = 1; n <= 5; ++n) {
        std::vector<Quaternion> mono(n + 1, Quaternion::zero());
        mono[n] = Quaternion::one();
        const double x = 0.7;
        CHECK(qdist(spherical_derivative(RegularSeries{mono}, Quaternion{x}),
                    Quaternion{n * std::pow(x, n - 1)}) < 1e-14);
    }

    // q^2 has spherical derivative q + conj(q) = 2x.
    CounterRng rng = CounterRng::substream(61, "series-sderiv", 0);
    const Quaternion p = rng.gaussian_quaternion();
    CHECK(qdist(spherical_derivative(sq, p), Quaternion{2 * p.x0}) < 1e-13);
    CHECK(qdist(spherical_derivative(RegularSeries::identity(), p), Quaternion::one()) < 1e-14);
}

TEST_CASE("representation formula") {
    CounterRng rng = CounterRng::substream(67, "series-rep", 0);
    const RegularSeries f = random_poly(rng, 7);
    const ImaginaryUnit I = rng.unit_imaginary();

    CHECK(qdist(representation_formula(f, 0.3, 0.4, I, I),
                eval(f, Quaternion{0.3} + I.q() * 0.4)) < 1e-13);
    const ImaginaryUnit J = rng.unit_imaginary();
    CHECK(qdist(representation_formula(f, 0.3, 0.0, I, J), eval(f, Quaternion{0.3})) < 1e-13);

    // Linear f = q a: the formula reduces to (x + yJ) a.
    const Quaternion a = rng.gaussian_quaternion();
    const RegularSeries lin{Quaternion::zero(), a};
    CHECK(qdist(representation_formula(lin, 0.2, 0.6, I, J),
                (Quaternion{0.2} + J.q() * 0.6) * a) < 1e-14);

    double worst = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        CounterRng r2 = CounterRng::substream(71, "series-rep-prop", trial);
        const RegularSeries g = random_poly(r2, 6);
        const ImaginaryUnit I2 = r2.unit_imaginary();
        const ImaginaryUnit J2 = r2.unit_imaginary();
        const double x = r2.uniform(-0.7, 0.7), y = r2.uniform(0, 0.7);
        const Quaternion direct = eval(g, Quaternion{x} + J2.q() * y);
        worst = std::max(worst, qdist(representation_formula(g, x, y, I2, J2), direct) /
                                    (1.0 + direct.norm()));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("regular Moebius maps") {
    const MoebiusMap ident(Quaternion::zero());
    CounterRng rng = CounterRng::substream(73, "series-moebius", 0);
    for (int k = 0; k < 10; ++k) {
        const Quaternion q = rng.interior_ball_point(0.01);
        CHECK(moebius_eval(ident, q) == q);
    }

    // Real parameter on real points: (q - l)/(1 - l q).
    const MoebiusMap mreal(Quaternion{0.5});
    CHECK(qdist(moebius_eval(mreal, Quaternion{0.2}),
                Quaternion{(0.2 - 0.5) / (1 - 0.5 * 0.2)}) < 1e-15);

    // Same-slice evaluation agrees with the complex formula (1 - conj(a) q)^{-1} (q - a).
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng r2 = CounterRng::substream(79, "series-moebius-slice", trial);
        const ImaginaryUnit I = r2.unit_imaginary();
        const cplx za{r2.uniform(-0.6, 0.6), r2.uniform(-0.6, 0.6)};
        const cplx zq{r2.uniform(-0.6, 0.6), r2.uniform(-0.6, 0.6)};
        if (std::abs(za) > 0.9 || std::abs(zq) > 0.95) continue;
        const MoebiusMap m(embed(za, I));
        const cplx expected = (zq - za) / (1.0 - std::conj(za) * zq);
        worst = std::max(worst, qdist(moebius_eval(m, embed(zq, I)), embed(expected, I)));
    }
    CHECK(worst < 1e-13);

    // M_l then M_{-l} is the identity on each slice disc.
    double comp = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng r2 = CounterRng::substream(83, "series-moebius-comp", trial);
        const double l = r2.uniform(-0.8, 0.8);
        const MoebiusMap ml(Quaternion{l}), mml(Quaternion{-l});
        const Quaternion q = r2.interior_ball_point(0.05);
        comp = std::max(comp, qdist(moebius_eval(mml, moebius_eval(ml, q)), q));
    }
    CHECK(comp < 1e-11);

    CHECK_THROWS_AS(MoebiusMap(Quaternion{0.9999999999999}), DomainViolation);
    CHECK_THROWS_AS(moebius_eval(mreal, Quaternion{0, 1, 0, 0} * 1.5), DomainViolation);
}

TEST_CASE("ball kernel") {
    CounterRng rng = CounterRng::substream(89, "series-kernel", 0);
    CHECK(kernel_ball(Quaternion::zero(), rng.interior_ball_point(0.1)) == Quaternion::one());

    const Quaternion v = kernel_ball(Quaternion::i() * 0.5, Quaternion::j() * 0.5);
    CHECK(qdist(v, Quaternion{16.0 / 15.0} + Quaternion::k() * (4.0 / 15.0)) < 1e-15);

    CHECK(qdist(kernel_ball(Quaternion{0.3}, Quaternion{0.6}), Quaternion{1.0 / (1 - 0.18)}) <
          1e-15);

    // Closed form vs truncated geometric series, |q|,|w| <= 0.7.
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng r2 = CounterRng::substream(97, "series-kernel-series", trial);
        const Quaternion w = r2.ball_point(0.7);
        const Quaternion q = r2.ball_point(0.7);
        Quaternion sum = Quaternion::zero(), wb = Quaternion::one();
        // sum q^n conj(w)^n by Horner would need the coefficients; accumulate directly.
        std::vector<Quaternion> coeffs(201);
        for (int n = 0; n <= 200; ++n) {
            coeffs[n] = wb;
            wb = wb * w.conj();
        }
        sum = eval(RegularSeries{coeffs}, q);
        worst = std::max(worst, qdist(kernel_ball(w, q), sum));
    }
    CHECK(worst < 1e-10);

    // Slice preservation: w, q in L_I gives a value in L_I.
    double leak = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng r2 = CounterRng::substream(101, "series-kernel-slice", trial);
        const ImaginaryUnit I = r2.unit_imaginary();
        const Quaternion w = embed({r2.uniform(-0.6, 0.6), r2.uniform(-0.6, 0.6)}, I);
        const Quaternion q = embed({r2.uniform(-0.6, 0.6), r2.uniform(-0.6, 0.6)}, I);
        const Quaternion val = kernel_ball(w, q);
        const Quaternion off = val.im() - I.q() * dot_im(val, I.q());
        leak = std::max(leak, off.norm());
    }
    CHECK(leak < 1e-13);

    CHECK_THROWS_AS(kernel_ball(Quaternion{1.2}, Quaternion{0.9}), DomainViolation);
}

TEST_CASE("half-space kernel") {
    CHECK(qdist(kernel_halfspace(Quaternion::one(), Quaternion::one()), Quaternion{0.5}) < 1e-16);
    CHECK(qdist(kernel_halfspace(Quaternion{2.0}, Quaternion{3.0}), Quaternion{0.2}) < 1e-15);

    // w = 1, q = 1 + i via complex arithmetic in L_i.
    const cplx zq{1.0, 1.0};
    const cplx expect = (zq + 1.0) / (zq * zq + 2.0 * zq + 1.0);
    CHECK(qdist(kernel_halfspace(Quaternion::one(), Quaternion{1, 1, 0, 0}),
                embed(expect, ImaginaryUnit::designated())) < 1e-15);

    // Closed form vs the truncated star-reciprocal of q + conj(w).
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng rng = CounterRng::substream(103, "series-hskernel", trial);
        const Quaternion w = rng.halfspace_point(0.2, 0.7, 0.45);
        if (w.norm() > 0.7 || w.norm() < 0.3) continue;
        Quaternion q;
        do {
            q = rng.ball_point(0.7 * w.norm());
        } while (q.re() <= 1e-3);
        const RegularSeries lin{w.conj(), Quaternion::one()};
        const RegularSeries rec = star_inverse(lin, 200);
        worst = std::max(worst, qdist(kernel_halfspace(w, q), eval(rec, q)));
    }
    CHECK(worst < 1e-10);

    CHECK_THROWS_AS(kernel_halfspace(Quaternion{-1.0}, Quaternion::one()), DomainViolation);
}

TEST_CASE("Cayley maps") {
    CHECK(qdist(cayley(Quaternion::zero()), Quaternion::one()) < 1e-16);
    CHECK(qdist(cayley(Quaternion::i() * 0.5), Quaternion{0.6, 0.8, 0, 0}) < 1e-15);
    CHECK(qdist(cayley_inv(Quaternion::one()), Quaternion::zero()) < 1e-16);

    double round = 0, leak = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        CounterRng rng = CounterRng::substream(107, "series-cayley", trial);
        const Quaternion q = rng.interior_ball_point(0.02);
        const Quaternion hs = cayley(q);
        CHECK(hs.re() > 0.0);
        round = std::max(round, qdist(cayley_inv(hs), q));
        // Slice preserved: Im(C(q)) parallel to Im(q).
        leak = std::max(leak, cross_im(hs, q).norm() / (1.0 + hs.norm() * q.norm()));
    }
    CHECK(round < 1e-13);
    CHECK(leak < 1e-13);

    CHECK_THROWS_AS(cayley(Quaternion{1.5}), DomainViolation);
    CHECK_THROWS_AS(cayley_inv(Quaternion{-0.2}), DomainViolation);
}
