#pragma once

#include <vector>

#include "parasol/interval.hpp"
#include "parasol/quadrature.hpp"

// Interval polynomials over local cell coordinates (xi, tau) in [0,1]^2.
// These carry the rigorous side of every piecewise-polynomial computation:
// residual fields, coefficient fields and mismatch integrands.

namespace parasol {

/// Univariate interval polynomial sum a[i] xi^i.
struct Poly1 {
    std::vector<Interval> a;

    int degree() const { return int(a.size()) - 1; }

    Interval eval(const Interval& x) const {
        Interval r(0.0);
        for (int i = int(a.size()) - 1; i >= 0; --i) r = r * x + a[std::size_t(i)];
        return r;
    }

    Poly1 derivative() const {
        if (a.size() <= 1) return Poly1{{Interval(0.0)}};
        Poly1 d;
        d.a.resize(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i)
            d.a[i - 1] = static_cast<double>(i) * a[i];
        return d;
    }
};

inline Poly1 operator+(const Poly1& p, const Poly1& q) {
    Poly1 r;
    r.a.resize(std::max(p.a.size(), q.a.size()), Interval(0.0));
    for (std::size_t i = 0; i < p.a.size(); ++i) r.a[i] += p.a[i];
    for (std::size_t i = 0; i < q.a.size(); ++i) r.a[i] += q.a[i];
    return r;
}

inline Poly1 operator-(const Poly1& p, const Poly1& q) {
    Poly1 r;
    r.a.resize(std::max(p.a.size(), q.a.size()), Interval(0.0));
    for (std::size_t i = 0; i < p.a.size(); ++i) r.a[i] += p.a[i];
    for (std::size_t i = 0; i < q.a.size(); ++i) r.a[i] -= q.a[i];
    return r;
}

inline Poly1 operator*(const Poly1& p, const Poly1& q) {
    Poly1 r;
    r.a.resize(p.a.size() + q.a.size() - 1, Interval(0.0));
    for (std::size_t i = 0; i < p.a.size(); ++i)
        for (std::size_t j = 0; j < q.a.size(); ++j) r.a[i + j] += p.a[i] * q.a[j];
    return r;
}

/// Restriction of a global polynomial sum c[k] x^k to x = x0 + w*xi.
inline Poly1 compose_affine(const std::vector<Interval>& c, const Interval& x0,
                            const Interval& w) {
    Poly1 lin{{x0, w}};
    Poly1 r{{Interval(0.0)}};
    for (int k = int(c.size()) - 1; k >= 0; --k) {
        r = r * lin;
        r.a[0] += c[std::size_t(k)];
    }
    return r;
}

/// Enclosure of the integral of p over [0,1] by a Gauss rule of exact degree.
inline Interval integrate01(const Poly1& p) {
    const QuadRule01& rule = gauss_rule01(gauss_points_for_degree(p.degree()));
    Interval s(0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * p.eval(rule.nodes[i]);
    return s;
}

/// Bivariate interval polynomial sum a[p][q] xi^p tau^q, stored row-major in
/// xi.  nx, nt are the coefficient counts (degree + 1) per variable.
struct Poly2 {
    int nx = 1, nt = 1;
    std::vector<Interval> a{Interval(0.0)};

    static Poly2 zero(int nx_, int nt_) {
        Poly2 p;
        p.nx = nx_;
        p.nt = nt_;
        p.a.assign(std::size_t(nx_) * nt_, Interval(0.0));
        return p;
    }
    static Poly2 constant(const Interval& c) {
        Poly2 p;
        p.a[0] = c;
        return p;
    }

    Interval& at(int p, int q) { return a[std::size_t(p) * nt + q]; }
    const Interval& at(int p, int q) const { return a[std::size_t(p) * nt + q]; }

    Interval eval(const Interval& xi, const Interval& tau) const {
        Interval r(0.0);
        for (int p = nx - 1; p >= 0; --p) {
            Interval row(0.0);
            for (int q = nt - 1; q >= 0; --q) row = row * tau + at(p, q);
            r = r * xi + row;
        }
        return r;
    }

    Poly2 d_tau() const {
        if (nt == 1) return zero(1, 1);
        Poly2 d = zero(nx, nt - 1);
        for (int p = 0; p < nx; ++p)
            for (int q = 1; q < nt; ++q) d.at(p, q - 1) = static_cast<double>(q) * at(p, q);
        return d;
    }

    Poly2 d_xi() const {
        if (nx == 1) return zero(1, 1);
        Poly2 d = zero(nx - 1, nt);
        for (int p = 1; p < nx; ++p)
            for (int q = 0; q < nt; ++q) d.at(p - 1, q) = static_cast<double>(p) * at(p, q);
        return d;
    }
};

inline Poly2 operator+(const Poly2& x, const Poly2& y) {
    Poly2 r = Poly2::zero(std::max(x.nx, y.nx), std::max(x.nt, y.nt));
    for (int p = 0; p < x.nx; ++p)
        for (int q = 0; q < x.nt; ++q) r.at(p, q) += x.at(p, q);
    for (int p = 0; p < y.nx; ++p)
        for (int q = 0; q < y.nt; ++q) r.at(p, q) += y.at(p, q);
    return r;
}

inline Poly2 operator-(const Poly2& x, const Poly2& y) {
    Poly2 r = Poly2::zero(std::max(x.nx, y.nx), std::max(x.nt, y.nt));
    for (int p = 0; p < x.nx; ++p)
        for (int q = 0; q < x.nt; ++q) r.at(p, q) += x.at(p, q);
    for (int p = 0; p < y.nx; ++p)
        for (int q = 0; q < y.nt; ++q) r.at(p, q) -= y.at(p, q);
    return r;
}

inline Poly2 operator*(const Poly2& x, const Poly2& y) {
    Poly2 r = Poly2::zero(x.nx + y.nx - 1, x.nt + y.nt - 1);
    for (int p = 0; p < x.nx; ++p)
        for (int q = 0; q < x.nt; ++q) {
            if (x.at(p, q).lo() == 0 && x.at(p, q).hi() == 0) continue;
            for (int s = 0; s < y.nx; ++s)
                for (int t = 0; t < y.nt; ++t)
                    r.at(p + s, q + t) += x.at(p, q) * y.at(s, t);
        }
    return r;
}

inline Poly2 operator*(const Interval& c, const Poly2& x) {
    Poly2 r = x;
    for (auto& v : r.a) v = c * v;
    return r;
}

namespace detail {

inline const std::vector<std::vector<double>>& binomial_table(int n_max) {
    static std::vector<std::vector<double>> pascal = {{1.0}};
    while (int(pascal.size()) <= n_max) {
        const auto& prev = pascal.back();
        std::vector<double> row(prev.size() + 1, 1.0);
        for (std::size_t j = 1; j < prev.size(); ++j) row[j] = prev[j - 1] + prev[j];
        pascal.push_back(std::move(row));
    }
    return pascal;
}

// Monomial -> Bernstein coefficients along one axis:
//   b_j = sum_{i<=j} C(j,i)/C(d,i) a_i.
inline std::vector<Interval> bernstein_1d(const std::vector<Interval>& a) {
    int d = int(a.size()) - 1;
    const auto& C = binomial_table(d);
    std::vector<Interval> b(a.size(), Interval(0.0));
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= j; ++i)
            b[std::size_t(j)] += a[std::size_t(i)] * (Interval(C[std::size_t(j)][std::size_t(i)]) /
                                                      Interval(C[std::size_t(d)][std::size_t(i)]));
    return b;
}

inline Interval bernstein_range_once(const Poly2& p) {
    // Convert along xi (columns fixed), then along tau, and hull the
    // resulting control net; Bernstein coefficients bound the range.
    std::vector<std::vector<Interval>> cols(std::size_t(p.nt));
    for (int q = 0; q < p.nt; ++q) {
        std::vector<Interval> col(std::size_t(p.nx));
        for (int pp = 0; pp < p.nx; ++pp) col[std::size_t(pp)] = p.at(pp, q);
        cols[std::size_t(q)] = bernstein_1d(col);
    }
    Interval range;
    bool first = true;
    for (int pp = 0; pp < p.nx; ++pp) {
        std::vector<Interval> row(std::size_t(p.nt));
        for (int q = 0; q < p.nt; ++q) row[std::size_t(q)] = cols[std::size_t(q)][std::size_t(pp)];
        auto b = bernstein_1d(row);
        for (const auto& v : b) {
            range = first ? v : hull(range, v);
            first = false;
        }
    }
    return range;
}

// p(a + s*xi, c + u*tau) for the quadrant subdivisions.
inline Poly2 compose_affine_2d(const Poly2& p, double a, double s, double c, double u) {
    Poly2 r = Poly2::zero(1, 1);
    Poly2 linx = Poly2::zero(2, 1);
    linx.at(0, 0) = Interval(a);
    linx.at(1, 0) = Interval(s);
    for (int pp = p.nx - 1; pp >= 0; --pp) {
        Poly2 row = Poly2::zero(1, 1);
        Poly1 lint{{Interval(c), Interval(u)}};
        for (int q = p.nt - 1; q >= 0; --q) {
            Poly2 rl = Poly2::zero(1, row.nt + 1);
            for (int t = 0; t < row.nt; ++t) {
                rl.at(0, t) += row.at(0, t) * lint.a[0];
                rl.at(0, t + 1) += row.at(0, t) * lint.a[1];
            }
            rl.at(0, 0) += p.at(pp, q);
            row = rl;
        }
        r = r * linx + row;
    }
    return r;
}

} // namespace detail

/// Range enclosure of p over [0,1]^2 via the Bernstein control net, with one
/// level of quadrant subdivision when the first bound looks slack (more than
/// 10% beyond a sampled maximum).
inline Interval range_bound01(const Poly2& p) {
    Interval r = detail::bernstein_range_once(p);
    double sampled = 0.0;
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double t : {0.0, 0.5, 1.0})
            sampled = std::max(sampled, std::fabs(p.eval(Interval(x), Interval(t)).mid()));
    if (mag(r) > 1.1 * sampled + 1e-300) {
        Interval refined;
        bool first = true;
        for (double ax : {0.0, 0.5})
            for (double at : {0.0, 0.5}) {
                Interval q =
                    detail::bernstein_range_once(detail::compose_affine_2d(p, ax, 0.5, at, 0.5));
                refined = first ? q : hull(refined, q);
                first = false;
            }
        if (mag(refined) < mag(r)) r = refined;
    }
    return r;
}

/// Trace p(., tau = t0) as a univariate polynomial in xi.
inline Poly1 trace_at_tau(const Poly2& p, const Interval& t0) {
    Poly1 r;
    r.a.resize(std::size_t(p.nx), Interval(0.0));
    for (int pp = 0; pp < p.nx; ++pp) {
        Interval v(0.0);
        for (int q = p.nt - 1; q >= 0; --q) v = v * t0 + p.at(pp, q);
        r.a[std::size_t(pp)] = v;
    }
    return r;
}

/// Enclosure of the integral of p^2 over [0,1]^2: evaluate p on the nodes of
/// a rule exact for degree 2*deg(p) and square the values.
inline Interval integrate01_sq(const Poly2& p) {
    const QuadRule01& rx = gauss_rule01(gauss_points_for_degree(2 * (p.nx - 1)));
    const QuadRule01& rt = gauss_rule01(gauss_points_for_degree(2 * (p.nt - 1)));
    Interval s(0.0);
    for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
        Interval si(0.0);
        for (std::size_t j = 0; j < rt.nodes.size(); ++j)
            si += rt.weights[j] * sqr(p.eval(rx.nodes[i], rt.nodes[j]));
        s += rx.weights[i] * si;
    }
    return s;
}

/// Same for a univariate polynomial over [0,1].
inline Interval integrate01_sq(const Poly1& p) {
    const QuadRule01& rx = gauss_rule01(gauss_points_for_degree(2 * p.degree()));
    Interval s(0.0);
    for (std::size_t i = 0; i < rx.nodes.size(); ++i)
        s += rx.weights[i] * sqr(p.eval(rx.nodes[i]));
    return s;
}

} // namespace parasol
