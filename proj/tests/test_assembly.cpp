#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "parasol/tensor_basis.hpp"
#include "parasol/verified_linalg.hpp"
#include "support/mp.hpp"

using namespace parasol;

namespace {

// Simpson's rule is exact for cubics, hence symbolic for P1 x P1 integrands.
mp::Real simpson(const std::function<mp::Real(const mp::Real&)>& f, const mp::Real& a,
                 const mp::Real& b) {
    mp::Real h = b - a;
    mp::Real mid = (a + b) / mp::Real(2);
    return h / mp::Real(6) * (f(a) + mp::Real(4) * f(mid) + f(b));
}

struct MpHat {
    std::vector<double> nodes;
    int idx; // basis index: hat at nodes[idx+1]

    mp::Real value(const mp::Real& x) const {
        mp::Real xl(nodes[idx]), xc(nodes[idx + 1]);
        if (x >= xl && x <= xc) return (x - xl) / (xc - xl);
        if (std::size_t(idx + 2) < nodes.size()) {
            mp::Real xr(nodes[idx + 2]);
            if (x >= xc && x <= xr) return (xr - x) / (xr - xc);
        }
        return mp::Real(0);
    }
    mp::Real slope(const mp::Real& x) const {
        mp::Real xl(nodes[idx]), xc(nodes[idx + 1]);
        if (x > xl && x < xc) return mp::Real(1) / (xc - xl);
        if (std::size_t(idx + 2) < nodes.size()) {
            mp::Real xr(nodes[idx + 2]);
            if (x > xc && x < xr) return mp::Real(-1) / (xr - xc);
        }
        return mp::Real(0);
    }
};

// piecewise-exact integral of f over the node sequence
mp::Real integrate_piecewise(const std::vector<double>& nodes,
                             const std::function<mp::Real(const mp::Real&)>& f) {
    mp::Real total(0);
    for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
        mp::Real a(nodes[e]), b(nodes[e + 1]);
        // stay strictly inside the element so slopes are single-valued
        mp::Real eps = (b - a) / mp::Real(1e30);
        total = total + simpson(f, a + eps, b - eps) ;
    }
    return total;
}

bool encloses(const Interval& iv, const mp::Real& x, double slack = 1e-25) {
    return mp::Real(iv.lo()) <= x + mp::Real(slack) && x <= mp::Real(iv.hi()) + mp::Real(slack);
}

} // namespace

TEST_CASE("single-cell matrices match hand integration") {
    SpatialMesh sm = uniform_spatial(2);  // one interior node, h = 1/2
    TemporalMesh tm = uniform_temporal(1.0, 1);
    TensorBasis basis(sm, tm);
    CHECK(basis.dim() == 1);

    CHECK(encloses(assemble_A(basis)(0, 0), mp::Real::ratio(1, 3)));
    CHECK(encloses(assemble_B(basis)(0, 0), mp::Real(2)));
    CHECK(encloses(assemble_Y(basis)(0, 0), mp::Real::ratio(1, 3)));
    CHECK(encloses(assemble_M(basis)(0, 0), mp::Real::ratio(4, 3)));
    CHECK(encloses(assemble_U(basis)(0, 0), mp::Real::ratio(1, 9)));
    CHECK(encloses(assemble_W(basis)(0, 0), mp::Real(4)));

    // G = A + nu B for c == 0; adding c == 1 contributes (1/2)(1/3)
    CoefficientField zero = constant_field(sm, tm, Interval(0.0));
    CoefficientField one = constant_field(sm, tm, Interval(1.0));
    Interval nu(1.0);
    IMatrix g0 = assemble_G(basis, zero, nu);
    CHECK(encloses(g0(0, 0), mp::Real::ratio(1, 3) + mp::Real(2)));
    IMatrix g1 = assemble_G(basis, one, nu);
    CHECK(encloses(g1(0, 0), mp::Real::ratio(1, 3) + mp::Real(2) + mp::Real::ratio(1, 6)));
}

TEST_CASE("empty verification space is rejected") {
    SpatialMesh sm = uniform_spatial(1); // no interior node
    TemporalMesh tm = uniform_temporal(1.0, 2);
    CHECK_THROWS_AS(TensorBasis(sm, tm), EmptySpaceError);
}

TEST_CASE("tensor factorization against a symbolic oracle") {
    SpatialMesh sm = uniform_spatial(4);
    TemporalMesh tm = uniform_temporal(0.5, 3);
    TensorBasis basis(sm, tm);

    std::vector<double> xn, tn;
    for (int j = 0; j <= sm.elements(); ++j) xn.push_back(sm.node(j));
    for (int j = 0; j <= tm.elements(); ++j) tn.push_back(tm.node(j));

    IMatrix A = assemble_A(basis), M = assemble_M(basis), B = assemble_B(basis);
    IMatrix U = assemble_U(basis), W = assemble_W(basis), Y = assemble_Y(basis);

    std::mt19937 rng(5);
    for (int rep = 0; rep < 12; ++rep) {
        int p = int(rng() % std::size_t(basis.m())), q = int(rng() % std::size_t(basis.m()));
        int i = int(rng() % std::size_t(basis.n())), j = int(rng() % std::size_t(basis.n()));
        MpHat tp{tn, p}, tq{tn, q};
        MpHat xi{xn, i}, xj{xn, j};

        mp::Real t_mass = integrate_piecewise(tn, [&](const mp::Real& t) { return tp.value(t) * tq.value(t); });
        mp::Real t_stiff = integrate_piecewise(tn, [&](const mp::Real& t) { return tp.slope(t) * tq.slope(t); });
        mp::Real t_conv = integrate_piecewise(tn, [&](const mp::Real& t) { return tq.value(t) * tp.slope(t); });
        mp::Real x_mass = integrate_piecewise(xn, [&](const mp::Real& x) { return xi.value(x) * xj.value(x); });
        mp::Real x_stiff = integrate_piecewise(xn, [&](const mp::Real& x) { return xi.slope(x) * xj.slope(x); });
        mp::Real y_t = tp.value(mp::Real(tm.length())) * tq.value(mp::Real(tm.length()));

        int I = basis.flat(p, i), J = basis.flat(q, j);
        CHECK(encloses(A(I, J), t_stiff * x_mass));
        CHECK(encloses(M(I, J), t_mass * x_stiff));
        CHECK(encloses(B(I, J), t_conv * x_stiff));
        CHECK(encloses(U(I, J), t_mass * x_mass));
        CHECK(encloses(W(I, J), t_stiff * x_stiff));
        CHECK(encloses(Y(I, J), y_t * x_mass));
    }
}

TEST_CASE("structure: symmetry and positive definiteness certificates") {
    SpatialMesh sm = uniform_spatial(5);
    TemporalMesh tm = uniform_temporal(0.2, 4);
    TensorBasis basis(sm, tm);

    for (const IMatrix& s : {assemble_A(basis), assemble_M(basis), assemble_U(basis),
                             assemble_W(basis), assemble_Y(basis)}) {
        CHECK(s.symmetry_hint);
        for (int i = 0; i < s.rows(); ++i)
            for (int j = 0; j < s.cols(); ++j) CHECK(s(i, j) == s(j, i));
    }
    CHECK(sym_eig_min_bound(assemble_A(basis)).value.lo() > 0.0);
    CHECK(sym_eig_min_bound(assemble_M(basis)).value.lo() > 0.0);
    CHECK(sym_eig_min_bound(assemble_U(basis)).value.lo() > 0.0);
    CHECK(sym_eig_min_bound(assemble_W(basis)).value.lo() > 0.0);
    CHECK(sym_eig_min_bound(assemble_Y(basis)).value.lo() > -1e-12); // PSD only
}

TEST_CASE("time-dependent coupling block against a symbolic oracle") {
    // c(x,t) = t makes C nonsymmetric in time, so this pins the index
    // orientation C(I,J) = (c phi_J, d phi_I/dt)
    SpatialMesh sm = uniform_spatial(3);
    TemporalMesh tm = uniform_temporal(0.75, 2);
    TensorBasis basis(sm, tm);

    CoefficientField c(sm, tm);
    for (int ex = 0; ex < sm.elements(); ++ex)
        for (int et = 0; et < tm.elements(); ++et) {
            Poly2 p = Poly2::zero(1, 2);
            p.at(0, 0) = Interval(tm.node(et));
            p.at(0, 1) = Interval(tm.width(et));
            c.set_cell(ex, et, p);
        }
    IMatrix C = assemble_C(basis, c);

    std::vector<double> xn, tn;
    for (int j = 0; j <= sm.elements(); ++j) xn.push_back(sm.node(j));
    for (int j = 0; j <= tm.elements(); ++j) tn.push_back(tm.node(j));
    for (int p = 0; p < basis.m(); ++p)
        for (int q = 0; q < basis.m(); ++q)
            for (int i = 0; i < basis.n(); ++i)
                for (int j = 0; j < basis.n(); ++j) {
                    MpHat tp{tn, p}, tq{tn, q}, xi{xn, i}, xj{xn, j};
                    mp::Real tint = integrate_piecewise(tn, [&](const mp::Real& t) {
                        return t * tq.value(t) * tp.slope(t);
                    });
                    mp::Real xint = integrate_piecewise(xn, [&](const mp::Real& x) {
                        return xi.value(x) * xj.value(x);
                    });
                    CHECK(encloses(C(basis.flat(p, i), basis.flat(q, j)), tint * xint));
                }
}

TEST_CASE("coefficient field range bounds") {
    SpatialMesh sm = uniform_spatial(2);
    TemporalMesh tm = uniform_temporal(1.0, 1);

    Interval five = coefficient_bounds(constant_field(sm, tm, Interval(5.0)));
    CHECK(five.hi() >= 5.0);
    CHECK(five.hi() <= 5.0 + 1e-12);

    // c(x,t) = x on a single element [0,1]
    SpatialMesh one = uniform_spatial(1);
    CoefficientField f(one, tm);
    Poly2 p = Poly2::zero(2, 1);
    p.at(1, 0) = Interval(1.0);
    f.set_cell(0, 0, p);
    Interval b = coefficient_bounds(f);
    CHECK(b.hi() >= 1.0);
    CHECK(b.hi() <= 1.0001);
}
