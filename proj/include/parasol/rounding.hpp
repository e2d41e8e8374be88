#pragma once

#include <cmath>
#include <limits>

// Directed-rounding scalar kernels built on error-free transformations.
//
// Each *_down/*_up function returns a double that is <= / >= the exact real
// result of the operation on its double arguments.  The direction is decided
// from the exact rounding error (TwoSum for +/-, an FMA residual for *, /,
// sqrt), so no global rounding-mode switch is ever required and results are
// tight: at most one ulp from the correctly rounded value.
//
// Requires a translation unit compiled without FP contraction.

namespace parasol::rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMaxD = std::numeric_limits<double>::max();
// Below this magnitude the FMA residual of *, / is no longer guaranteed to be
// exact (underflow in the error term); fall back to one-ulp widening there.
inline constexpr double kTiny = 0x1p-960;

inline double next_down(double x) { return std::nextafter(x, -kInf); }
inline double next_up(double x) { return std::nextafter(x, kInf); }

// Exact error of s = fl(a + b) for finite s: a + b == s + err.
inline double two_sum_err(double a, double b, double s) {
    double bv = s - a;
    double av = s - bv;
    return (a - av) + (b - bv);
}

inline double add_down(double a, double b) {
    double s = a + b;
    if (std::isinf(s)) {
        if (s < 0) return -kInf;
        // Overflow to +inf with finite inputs: the exact sum exceeds kMaxD.
        return (std::isinf(a) || std::isinf(b)) ? kInf : kMaxD;
    }
    return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (std::isinf(s)) {
        if (s > 0) return kInf;
        return (std::isinf(a) || std::isinf(b)) ? -kInf : -kMaxD;
    }
    return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    double p = a * b;
    if (std::isinf(p)) {
        if (p < 0) return -kInf;
        return (std::isinf(a) || std::isinf(b)) ? kInf : kMaxD;
    }
    if (a == 0 || b == 0) return 0.0;
    if (std::fabs(p) < kTiny) return next_down(p);
    return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    if (std::isinf(p)) {
        if (p > 0) return kInf;
        return (std::isinf(a) || std::isinf(b)) ? -kInf : -kMaxD;
    }
    if (a == 0 || b == 0) return 0.0;
    if (std::fabs(p) < kTiny) return next_up(p);
    return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

// Directed quotient; the caller guarantees b != 0.
inline double div_down(double a, double b) {
    double q = a / b;
    if (std::isinf(q)) {
        if (q < 0) return -kInf;
        return std::isinf(a) ? kInf : kMaxD;
    }
    if (a == 0) return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
    double r = std::fma(q, b, -a); // r = q*b - a exactly
    // exact quotient < q  <=>  (b > 0 ? r > 0 : r < 0)
    if ((b > 0 && r > 0) || (b < 0 && r < 0)) return next_down(q);
    return q;
}

inline double div_up(double a, double b) {
    double q = a / b;
    if (std::isinf(q)) {
        if (q > 0) return kInf;
        return std::isinf(a) ? -kInf : -kMaxD;
    }
    if (a == 0) return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
    double r = std::fma(q, b, -a);
    if ((b > 0 && r < 0) || (b < 0 && r > 0)) return next_up(q);
    return q;
}

// std::sqrt is correctly rounded; the residual decides the direction.
inline double sqrt_down(double a) {
    if (a == 0) return 0.0;
    double s = std::sqrt(a);
    if (std::isinf(s)) return kMaxD;
    if (a < kTiny) return next_down(s);
    double r = std::fma(s, s, -a);
    return r > 0 ? next_down(s) : s;
}

inline double sqrt_up(double a) {
    if (a == 0) return 0.0;
    double s = std::sqrt(a);
    if (std::isinf(s)) return kInf;
    if (a < kTiny) return next_up(s);
    double r = std::fma(s, s, -a);
    return r < 0 ? next_up(s) : s;
}

// x * 2^n per endpoint; exact except at the range boundaries.
inline double ldexp_down(double x, int n) {
    double r = std::ldexp(x, n);
    if (std::isinf(r)) return r < 0 ? -kInf : kMaxD;
    if (std::fabs(r) < kTiny && x != 0) return next_down(r);
    return r;
}

inline double ldexp_up(double x, int n) {
    double r = std::ldexp(x, n);
    if (std::isinf(r)) return r > 0 ? kInf : -kMaxD;
    if (std::fabs(r) < kTiny && x != 0) return next_up(r);
    return r;
}

} // namespace parasol::rnd
