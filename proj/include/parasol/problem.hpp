#pragma once

#include <vector>

#include "parasol/errors.hpp"
#include "parasol/interval.hpp"

namespace parasol {

/// The initial-boundary-value problem u_t - nu*Lap(u) = g(u) on (0,1) with
/// homogeneous Dirichlet data.  g is a polynomial of degree <= 3 with
/// constant coefficients; u0 is a polynomial vanishing at 0 and 1.
struct ProblemSpec {
    Interval nu{1.0};
    std::vector<Interval> g;   // g[c] multiplies u^c, size <= 4
    std::vector<Interval> u0;  // coefficients of x^k

    int g_degree() const {
        for (int c = int(g.size()) - 1; c >= 0; --c)
            if (!(g[std::size_t(c)].lo() == 0 && g[std::size_t(c)].hi() == 0)) return c;
        return 0;
    }

    void validate() const {
        if (!(nu.lo() > 0)) throw ConfigError("nu must be positive");
        if (g.size() > 4) throw ConfigError("unsupported nonlinearity degree");
    }

    double nu_mid() const { return nu.mid(); }

    Interval g_coeff(int c) const {
        return c < int(g.size()) ? g[std::size_t(c)] : Interval(0.0);
    }

    // double-precision paths for the non-rigorous reference solve
    double g_eval(double u) const {
        double r = 0.0;
        for (int c = int(g.size()) - 1; c >= 0; --c) r = r * u + g[std::size_t(c)].mid();
        return r;
    }
    double g_deriv(double u) const {
        double r = 0.0;
        for (int c = int(g.size()) - 1; c >= 1; --c)
            r = r * u + c * g[std::size_t(c)].mid();
        return r;
    }

    double u0_eval(double x) const {
        double r = 0.0;
        for (int k = int(u0.size()) - 1; k >= 0; --k) r = r * x + u0[std::size_t(k)].mid();
        return r;
    }
    double u0_deriv(double x) const {
        double r = 0.0;
        for (int k = int(u0.size()) - 1; k >= 1; --k)
            r = r * x + k * u0[std::size_t(k)].mid();
        return r;
    }
    double u0_deriv2(double x) const {
        double r = 0.0;
        for (int k = int(u0.size()) - 1; k >= 2; --k)
            r = r * x + k * (k - 1) * u0[std::size_t(k)].mid();
        return r;
    }
};

inline ProblemSpec make_fujita() {
    ProblemSpec p;
    p.nu = Interval(1.0);
    p.g = {Interval(0.0), Interval(0.0), Interval(1.0)};
    // u0 = 32x(x-1)(x^2-x-1) = 32x - 64x^3 + 32x^4
    p.u0 = {Interval(0.0), Interval(32.0), Interval(0.0), Interval(-64.0), Interval(32.0)};
    return p;
}

inline ProblemSpec make_allen_cahn(const Interval& a) {
    ProblemSpec p;
    p.nu = from_ratio(1, 150);
    // g(u) = u(1-u)(u-a) = -a u + (1+a) u^2 - u^3
    p.g = {Interval(0.0), -a, 1.0 + a, Interval(-1.0)};
    // u0 = x(x-1)(x^2-x-1) = x - 2x^3 + x^4
    p.u0 = {Interval(0.0), Interval(1.0), Interval(0.0), Interval(-2.0), Interval(1.0)};
    return p;
}

} // namespace parasol
