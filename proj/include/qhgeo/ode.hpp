#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "qhgeo/errors.hpp"

namespace qhgeo {

/// Adaptive Dormand-Prince 5(4) integrator.
///
/// rhs(s, y) returns dy/ds; observer(s, y) is called at every accepted step
/// (including the initial state) and may return false to stop early.
template <std::size_t N>
void integrate_dp45(const std::function<std::array<double, N>(double, const std::array<double, N>&)>& rhs,
                    std::array<double, N> y, double s0, double s1, double tol, double max_step,
                    const std::function<bool(double, const std::array<double, N>&)>& observer) {
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static constexpr double b5[7] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                                     -2187.0 / 6784, 11.0 / 84, 0.0};
    static constexpr double b4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                     -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
    static constexpr double c[7] = {0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0};

    double s = s0;
    double h = std::min(max_step, (s1 - s0) * 0.01 + 1e-12);
    if (!observer(s, y)) return;

    std::array<std::array<double, N>, 7> k;
    int rejected_in_a_row = 0;
    while (s < s1) {
        h = std::min(h, s1 - s);
        k[0] = rhs(s, y);
        for (int stage = 1; stage < 7; ++stage) {
            std::array<double, N> yt = y;
            for (int j = 0; j < stage; ++j)
                for (std::size_t n = 0; n < N; ++n) yt[n] += h * a[stage][j] * k[j][n];
            k[stage] = rhs(s + c[stage] * h, yt);
        }
        std::array<double, N> y5 = y;
        double err = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            double d4 = y[n], d5 = y[n];
            for (int j = 0; j < 7; ++j) {
                d5 += h * b5[j] * k[j][n];
                d4 += h * b4[j] * k[j][n];
            }
            y5[n] = d5;
            const double scale = tol * (1.0 + std::fabs(y[n]));
            const double e = (d5 - d4) / scale;
            err += e * e;
        }
        err = std::sqrt(err / N);
        if (err <= 1.0) {
            s += h;
            y = y5;
            rejected_in_a_row = 0;
            if (!observer(s, y)) return;
        } else if (++rejected_in_a_row > 60) {
            throw NoConvergence("adaptive step control failed to find an acceptable step");
        }
        const double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::min(5.0, std::max(0.2, factor));
        h = std::min(h, max_step);
        if (h < 1e-14) throw NoConvergence("step size underflow in integrator");
    }
}

} // namespace qhgeo
