#pragma once

#include <array>
#include <cstdint>
#include <cmath>
#include <string_view>

#include "qhgeo/quaternion.hpp"
#include "qhgeo/slice.hpp"

namespace qhgeo {

/// Counter-based splittable RNG (SplitMix64 finalizer over a keyed counter).
///
/// Substreams are derived from (seed, stream label, trial index), so parallel
/// or reordered trials always see the same values.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t hash_label(std::string_view label) {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (const char c : label) {
            h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
            h *= 1099511628211ull;
        }
        return h;
    }

    static CounterRng substream(std::uint64_t seed, std::string_view suite, std::uint64_t trial) {
        return CounterRng(mix(seed ^ mix(hash_label(suite)) ^ mix(trial * 0x9e3779b97f4a7c15ull)));
    }

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        // Box-Muller; one value per call keeps the stream counter-addressable.
        const double u1 = std::max(uniform(), 0x1.0p-60);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    Quaternion gaussian_quaternion() { return {normal(), normal(), normal(), normal()}; }

    /// Uniform on the unit sphere S^3 of quaternions.
    Quaternion unit_quaternion() {
        for (;;) {
            const Quaternion g = gaussian_quaternion();
            const double n = g.norm();
            if (n > 1e-6) return g / n;
        }
    }

    /// Uniform imaginary unit (point of S).
    ImaginaryUnit unit_imaginary() {
        for (;;) {
            const Quaternion g{0.0, normal(), normal(), normal()};
            if (g.im_norm() > 1e-6) return ImaginaryUnit(g);
        }
    }

    /// Uniform in the ball of radius `radius` (Euclidean volume measure).
    Quaternion ball_point(double radius = 1.0) {
        const Quaternion u = unit_quaternion();
        const double r = radius * std::pow(uniform(), 0.25);
        return u * r;
    }

    /// Point of the open unit ball with |q| <= 1 - margin.
    Quaternion interior_ball_point(double margin) { return ball_point(1.0 - margin); }

    /// Point of the right half-space with Re in [margin, re_max], |Im| <= im_max.
    Quaternion halfspace_point(double margin, double re_max, double im_max) {
        const ImaginaryUnit I = unit_imaginary();
        const double x = uniform(margin, re_max);
        const double y = im_max * std::pow(uniform(), 1.0 / 3.0);
        return Quaternion{x} + I.q() * y;
    }

    /// Random element of O(3) via Gram-Schmidt on Gaussian columns.
    /// Determinant sign is left as drawn (rotations and reflections both occur).
    std::array<std::array<double, 3>, 3> random_orthogonal3() {
        std::array<std::array<double, 3>, 3> a{};
        for (auto& row : a)
            for (auto& v : row) v = normal();
        // Gram-Schmidt on columns.
        for (int c = 0; c < 3; ++c) {
            for (int p = 0; p < c; ++p) {
                double proj = 0.0;
                for (int r = 0; r < 3; ++r) proj += a[r][c] * a[r][p];
                for (int r = 0; r < 3; ++r) a[r][c] -= proj * a[r][p];
            }
            double n = 0.0;
            for (int r = 0; r < 3; ++r) n += a[r][c] * a[r][c];
            n = std::sqrt(n);
            if (n < 1e-8) return random_orthogonal3();
            for (int r = 0; r < 3; ++r) a[r][c] /= n;
        }
        return a;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace qhgeo
