#pragma once

#include <cmath>

#include "trishoot/rational.hpp"

namespace trishoot {

// Floating-point value with a running absolute error bound. Used to filter
// sign computations: when |v| > e the sign of v is the exact sign. Every
// operation keeps e conservative (the 1+2^-20 inflation swallows the
// rounding of the bound computation itself, the absolute term swallows
// denormals). The exact rational path remains the reference; differential
// tests in tests/test_geom.cpp exercise both on degenerate inputs.
struct Fv {
    double v;
    double e;
};

inline constexpr double kFvInfl = 1.0 + 1.0 / 1048576.0;
inline constexpr double kFvTiny = 1e-290;
inline constexpr double kFvEps = 2.220446049250313e-16;

inline Fv fv_exact(double x) { return {x, 0.0}; }

inline Fv fv_approx(double x) { return {x, std::fabs(x) * kApproxRelErr + kApproxAbsErr}; }

inline Fv operator+(Fv a, Fv b) {
    double s = a.v + b.v;
    double e = (a.e + b.e + std::fabs(s) * kFvEps) * kFvInfl + kFvTiny;
    return {s, e};
}

inline Fv operator-(Fv a, Fv b) {
    double s = a.v - b.v;
    double e = (a.e + b.e + std::fabs(s) * kFvEps) * kFvInfl + kFvTiny;
    return {s, e};
}

inline Fv operator*(Fv a, Fv b) {
    double m = a.v * b.v;
    double e = (std::fabs(a.v) * b.e + std::fabs(b.v) * a.e + a.e * b.e + std::fabs(m) * kFvEps) *
                   kFvInfl +
               kFvTiny;
    return {m, e};
}

// +1 / -1 / 0 when certain, kFilterUnsure when the interval straddles zero.
inline constexpr int kFilterUnsure = 2;

inline int fv_sign(Fv a) {
    if (a.v > a.e) return 1;
    if (a.v < -a.e) return -1;
    if (a.e == 0.0) return 0;
    return kFilterUnsure;
}

}  // namespace trishoot
