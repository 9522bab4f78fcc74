#pragma once

#include <stdexcept>
#include <string>

namespace qhgeo {

/// Division by a zero quaternion (inverse of 0 requested).
struct ZeroDivisionError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Argument outside the model domain (ball, half-space, unit sphere, ...).
struct DomainViolation : std::domain_error {
    using std::domain_error::domain_error;
};

/// Star-inverse of a series with vanishing constant term.
struct NonInvertibleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Evaluation point lies in the zero set of the symmetrization f*f^c.
struct SingularAtError : std::domain_error {
    using std::domain_error::domain_error;
};

/// f(q) = 0 branch of the pointwise star-product identity.
struct ZeroAtPointError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Series operation would exceed the configured degree cap.
struct DegreeCapExceeded : std::length_error {
    using std::length_error::length_error;
};

/// Round-off drove a metric-coefficient numerator significantly negative.
struct NegativeCoefficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two quadrature refinement levels disagree beyond the admitted tolerance.
struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver exhausted its budget without meeting its target.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-difference step cannot be fitted inside the domain.
struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Surface chart became singular (axis point reached with angular motion).
struct SingularChart : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownSuite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnknownSelector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace qhgeo
