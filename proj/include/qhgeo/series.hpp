#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qhgeo/quaternion.hpp"
#include "qhgeo/slice.hpp"

namespace qhgeo {

/// Slice-regular polynomial / truncated power series f(q) = sum_n q^n a_n
/// with quaternion coefficients on the right.
///
/// Trailing exactly-zero coefficients are normalized away; operations refuse
/// to grow past the degree cap.
class RegularSeries {
public:
    static constexpr std::size_t kDegreeCap = 512;

    RegularSeries() = default;
    explicit RegularSeries(std::vector<Quaternion> coeffs);
    RegularSeries(std::initializer_list<Quaternion> coeffs);

    static RegularSeries one() { return RegularSeries({Quaternion::one()}); }
    /// The monomial q (coefficients {0, 1}).
    static RegularSeries identity() { return RegularSeries({Quaternion::zero(), Quaternion::one()}); }

    std::size_t size() const { return coeffs_.size(); }
    /// Degree of the normalized polynomial (0 for the zero series).
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient a_n (zero beyond the stored degree).
    Quaternion coeff(std::size_t n) const {
        return n < coeffs_.size() ? coeffs_[n] : Quaternion::zero();
    }

    const std::vector<Quaternion>& coeffs() const { return coeffs_; }

    /// Largest coefficient norm (0 for the zero series).
    double max_coeff_norm() const;

private:
    std::vector<Quaternion> coeffs_;
};

/// Right-coefficient Horner evaluation of sum q^n a_n.
Quaternion eval(const RegularSeries& f, const Quaternion& q);

/// Star (regular) product: coefficient convolution c_n = sum_k a_k b_{n-k}.
RegularSeries star_mul(const RegularSeries& f, const RegularSeries& g,
                       std::size_t degree_cap = RegularSeries::kDegreeCap);

RegularSeries operator+(const RegularSeries& f, const RegularSeries& g);
RegularSeries operator-(const RegularSeries& f, const RegularSeries& g);

/// Coefficient conjugate f^c(q) = sum q^n conj(a_n).
RegularSeries conj_series(const RegularSeries& f);

/// Symmetrization f^s = f * f^c; all coefficients are real.
RegularSeries symmetrization(const RegularSeries& f);

/// Truncated star-inverse h of degree M with f * h = 1 + O(q^{M+1}).
///
/// Computed as (ordinary reciprocal of the real series f^s) * f^c, keeping
/// every division inside the commutative real subring.
RegularSeries star_inverse(const RegularSeries& f, std::size_t M);

/// Both sides of the pointwise star-product identity
/// (f*g)(q) = f(q) g(f(q)^{-1} q f(q)).
struct PointwiseStarIdentity {
    Quaternion lhs;
    Quaternion rhs;
};
PointwiseStarIdentity star_pointwise_identity(const RegularSeries& f, const RegularSeries& g,
                                              const Quaternion& q);

/// Conjugation T_f(q) = f^c(q)^{-1} q f^c(q); throws SingularAtError when
/// |f^s(q)| < 1e-13.
Quaternion T_f(const RegularSeries& f, const Quaternion& q);

/// Regular quotient (f^{-*} * g)(q) = f(T_f(q))^{-1} g(T_f(q)).
Quaternion regular_quotient(const RegularSeries& f, const RegularSeries& g, const Quaternion& q);

/// Slice (Cullen) derivative: coefficients n a_n shifted down one degree.
RegularSeries slice_derivative(const RegularSeries& f);

/// Spherical derivative (q - conj(q))^{-1} (f(q) - f(conj(q))); removable
/// value sum n x^{n-1} a_n at flagged real points.
Quaternion spherical_derivative(const RegularSeries& f, const Quaternion& q);

/// Representation-formula value at x + yJ from the two evaluations on L_I.
Quaternion representation_formula(const RegularSeries& f, double x, double y,
                                  const ImaginaryUnit& I, const ImaginaryUnit& J);

/// Regular Moebius transformation q -> (1 - q conj(a))^{-*} * (q - a) u.
struct MoebiusMap {
    Quaternion a; // |a| < 1 - 1e-12
    Quaternion u; // |u| = 1 within 1e-14

    explicit MoebiusMap(const Quaternion& a_, const Quaternion& u_ = Quaternion::one());
};

Quaternion moebius_eval(const MoebiusMap& m, const Quaternion& q);

/// Hardy-space reproducing kernel on the ball,
/// k_w(q) = (1 - q conj(w))^{-*} = (1 - 2q Re w + q^2 |w|^2)^{-1} (1 - q w).
Quaternion kernel_ball(const Quaternion& w, const Quaternion& q);

/// Hardy-space reproducing kernel on the right half-space,
/// (q^2 + 2q Re w + |w|^2)^{-1} (q + w).
Quaternion kernel_halfspace(const Quaternion& w, const Quaternion& q);

/// Cayley map C(q) = (1 - q)^{-1} (1 + q), ball onto right half-space.
Quaternion cayley(const Quaternion& q);

/// Inverse Cayley map C^{-1}(q) = (1 + q)^{-1} (q - 1).
Quaternion cayley_inv(const Quaternion& q);

} // namespace qhgeo
