#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>

#include "parasol/errors.hpp"
#include "parasol/rounding.hpp"

namespace parasol {

/// A closed interval [lo, hi] of extended reals with lo <= hi, lo < +inf,
/// hi > -inf.  Every operation returns an enclosure of the exact
/// real-arithmetic image of its arguments; all operations are pure and
/// deterministic, so values can be shared freely across threads.
class Interval {
  public:
    Interval() : lo_(0.0), hi_(0.0) {}

    explicit Interval(double point) : lo_(point), hi_(point) {
        if (std::isnan(point) || std::isinf(point))
            throw DomainError("Interval: point must be finite");
    }

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi) || !(lo <= hi) || lo == rnd::kInf ||
            hi == -rnd::kInf)
            throw DomainError("Interval: invalid endpoints");
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double mid() const {
        if (lo_ == -rnd::kInf && hi_ == rnd::kInf) return 0.0;
        if (lo_ == -rnd::kInf) return -rnd::kMaxD;
        if (hi_ == rnd::kInf) return rnd::kMaxD;
        double m = 0.5 * (lo_ + hi_);
        if (std::isinf(m)) m = 0.5 * lo_ + 0.5 * hi_;
        return m;
    }

    /// Upper bound of max |x - mid()| over members.
    double rad() const {
        double m = mid();
        return std::max(rnd::sub_up(m, lo_), rnd::sub_up(hi_, m));
    }

    double width() const { return rnd::sub_up(hi_, lo_); }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool is_point() const { return lo_ == hi_; }
    bool straddles_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }

    bool operator==(const Interval& o) const = default;

  private:
    double lo_, hi_;
};

inline Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return {rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi())};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo())};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    double c1 = rnd::mul_down(a.lo(), b.lo()), c2 = rnd::mul_down(a.lo(), b.hi());
    double c3 = rnd::mul_down(a.hi(), b.lo()), c4 = rnd::mul_down(a.hi(), b.hi());
    double d1 = rnd::mul_up(a.lo(), b.lo()), d2 = rnd::mul_up(a.lo(), b.hi());
    double d3 = rnd::mul_up(a.hi(), b.lo()), d4 = rnd::mul_up(a.hi(), b.hi());
    return {std::min({c1, c2, c3, c4}), std::max({d1, d2, d3, d4})};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.straddles_zero())
        throw DomainError("interval division by an interval containing 0");
    double c1 = rnd::div_down(a.lo(), b.lo()), c2 = rnd::div_down(a.lo(), b.hi());
    double c3 = rnd::div_down(a.hi(), b.lo()), c4 = rnd::div_down(a.hi(), b.hi());
    double d1 = rnd::div_up(a.lo(), b.lo()), d2 = rnd::div_up(a.lo(), b.hi());
    double d3 = rnd::div_up(a.hi(), b.lo()), d4 = rnd::div_up(a.hi(), b.hi());
    return {std::min({c1, c2, c3, c4}), std::max({d1, d2, d3, d4})};
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

/// Smallest interval containing both arguments.
inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

/// Upper bound of |x| over members.
inline double mag(const Interval& a) { return std::max(std::fabs(a.lo()), std::fabs(a.hi())); }

/// Lower bound of |x| over members (0 if the interval straddles zero).
inline double mig(const Interval& a) {
    if (a.straddles_zero()) return 0.0;
    return std::min(std::fabs(a.lo()), std::fabs(a.hi()));
}

/// Enclosure of the rational p/q.  |p|, |q| must fit a double exactly.
inline Interval from_ratio(std::int64_t p, std::int64_t q) {
    if (q == 0) throw DomainError("from_ratio: zero denominator");
    constexpr std::int64_t lim = std::int64_t(1) << 53;
    if (p >= lim || p <= -lim || q >= lim || q <= -lim)
        throw DomainError("from_ratio: operand exceeds 2^53");
    double pd = static_cast<double>(p), qd = static_cast<double>(q);
    return {rnd::div_down(pd, qd), rnd::div_up(pd, qd)};
}

/// Enclosure of {x^2 : x in a}; tighter than a*a when a straddles zero.
inline Interval sqr(const Interval& a) {
    double l = std::fabs(a.lo()), h = std::fabs(a.hi());
    double lo = mig(a), hi = std::max(l, h);
    return {rnd::mul_down(lo, lo), rnd::mul_up(hi, hi)};
}

inline Interval sqrt(const Interval& a) {
    if (a.lo() < 0) throw DomainError("interval sqrt of a negative domain");
    return {rnd::sqrt_down(a.lo()), rnd::sqrt_up(a.hi())};
}

/// a^n by binary exponentiation with even-power tightening.
inline Interval pow_int(const Interval& a, int n) {
    if (n < 0) return Interval(1.0) / pow_int(a, -n);
    if (n == 0) return Interval(1.0);
    if (n % 2 == 0) {
        Interval s = sqr(a);
        return n == 2 ? s : pow_int(s, n / 2);
    }
    return a * pow_int(a, n - 1);
}

namespace constants {
// Correctly rounded doubles round these constants down, so [v, next_up(v)]
// encloses the exact value (asserted against a high-precision oracle in the
// test suite).
inline Interval pi() {
    return {std::numbers::pi, rnd::next_up(std::numbers::pi)};
}
inline Interval ln2() {
    return {std::numbers::ln2, rnd::next_up(std::numbers::ln2)};
}
} // namespace constants

namespace detail {

// exp on a point argument by argument reduction x = n*ln2 + r, |r| <= ln2/2,
// followed by a degree-16 Taylor sum with an explicit remainder bound.
inline Interval exp_point(double x) {
    if (x == 0.0) return Interval(1.0);
    if (x >= 710.0) return {rnd::kMaxD, rnd::kInf};
    if (x <= -745.0) return {0.0, 0x1p-1074};

    double n = std::nearbyint(x / std::numbers::ln2);
    Interval r = Interval(x) - Interval(n) * constants::ln2();
    // |r| <= ln2/2 + slack
    constexpr int N = 16;
    Interval sum(1.0);
    Interval term(1.0);
    for (int k = 1; k <= N; ++k) {
        term = term * r / static_cast<double>(k);
        sum += term;
    }
    // Lagrange remainder: |R| <= |r|^(N+1)/(N+1)! * 1/(1 - |r|/(N+2))
    double rm = mag(r);
    double num = rm;
    for (int k = 2; k <= N + 1; ++k)
        num = rnd::mul_up(num, rnd::div_up(rm, static_cast<double>(k)));
    double den = rnd::sub_down(1.0, rnd::div_up(rm, static_cast<double>(N + 2)));
    double rem = rnd::mul_up(num, rnd::div_up(1.0, den));
    sum = sum + Interval(-rem, rem);

    int ni = static_cast<int>(n);
    return {rnd::ldexp_down(std::max(sum.lo(), 0.0), ni), rnd::ldexp_up(sum.hi(), ni)};
}

} // namespace detail

/// Enclosure of {e^x : x in a}; monotone in the argument.
inline Interval exp(const Interval& a) {
    double lo = a.lo() == -rnd::kInf ? 0.0 : detail::exp_point(a.lo()).lo();
    double hi = a.hi() == rnd::kInf ? rnd::kInf : detail::exp_point(a.hi()).hi();
    return {lo, hi};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

} // namespace parasol
