#pragma once

#include <random>

#include "qwiener/quaternion.hpp"

namespace qwiener {

// Deterministic source for property suites and tests.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }

    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }

    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }

    Quaternion quaternion_box(double scale = 1.0) {
        return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
                uniform(-scale, scale)};
    }

    Quaternion quaternion_unit() {
        while (true) {
            Quaternion p{normal(), normal(), normal(), normal()};
            const double n = p.norm();
            if (n > 1e-6) return p / n;
        }
    }

    ImaginaryUnit imaginary_unit() {
        while (true) {
            const double a = normal(), b = normal(), c = normal();
            if (a * a + b * b + c * c > 1e-12) return ImaginaryUnit::normalized(a, b, c);
        }
    }

    SliceBasis slice_basis() {
        const ImaginaryUnit i = imaginary_unit();
        while (true) {
            Quaternion v{0, normal(), normal(), normal()};
            v -= vec_dot(v, i.q) * i.q;
            const double n = v.norm();
            if (n > 1e-6) return SliceBasis(i, ImaginaryUnit(v / n));
        }
    }

    cplx complex_box(double scale = 1.0) {
        return {uniform(-scale, scale), uniform(-scale, scale)};
    }
};

} // namespace qwiener
