#include <catch2/catch_amalgamated.hpp>

#include "parasol/mesh.hpp"
#include "support/mp.hpp"

using namespace parasol;

namespace {
bool contains_mp(const Interval& iv, const mp::Real& x) {
    return mp::Real(iv.lo()) <= x && x <= mp::Real(iv.hi());
}
} // namespace

TEST_CASE("uniform spatial mesh basics") {
    SpatialMesh m = uniform_spatial(10);
    CHECK(m.interior_nodes() == 9);
    CHECK(m.elements() == 10);
    CHECK(m.h() == Catch::Approx(0.1).epsilon(1e-14));
    CHECK(m.h_min() == Catch::Approx(0.1).epsilon(1e-14));

    SpatialMesh degenerate = uniform_spatial(1);
    CHECK(degenerate.interior_nodes() == 0); // rejected later, at assembly

    CHECK_THROWS_AS(uniform_spatial(0), MeshError);
}

TEST_CASE("uniform temporal mesh basics") {
    TemporalMesh t = uniform_temporal(0.1, 100);
    CHECK(t.elements() == 100);
    CHECK(t.basis_size() == 100);
    CHECK(t.k() == Catch::Approx(0.001).epsilon(1e-12));
    CHECK(t.length() == Catch::Approx(0.1).epsilon(1e-14));
    CHECK(t.node(0) == 0.0);
    CHECK_THROWS_AS(uniform_temporal(-1.0, 3), MeshError);
    CHECK_THROWS_AS(uniform_temporal(1.0, 0), MeshError);
}

TEST_CASE("element widths are exactly representable for many meshes") {
    for (int n : {2, 3, 7, 10, 16, 33, 64, 100, 128, 1000})
        CHECK_NOTHROW(uniform_spatial(n));
    for (double T : {0.1, 1.0, 0.05, 0.3, 2.0})
        for (int m : {1, 2, 10, 32, 100, 128, 1000})
            CHECK_NOTHROW(uniform_temporal(T, m));
}

TEST_CASE("elementary constants") {
    SpatialMesh sm = uniform_spatial(10);
    TemporalMesh tm = uniform_temporal(0.1, 100);

    Interval com = constant_C_Omega(sm);
    mp::Real exact_com = mp::Real(sm.h()) / mp::Real::pi();
    CHECK(contains_mp(com, exact_com));
    CHECK(com.hi() == Catch::Approx(0.03183098).epsilon(1e-5));

    Interval cinv = constant_C_inv(sm);
    mp::Real exact_cinv = sqrt(mp::Real(12)) / mp::Real(sm.h_min());
    CHECK(contains_mp(cinv, exact_cinv));
    CHECK(cinv.hi() == Catch::Approx(34.64102).epsilon(1e-5));

    Interval cj = constant_C_J(tm);
    CHECK(contains_mp(cj, mp::Real(tm.k()) / mp::Real::pi()));

    CHECK(contains_mp(constant_C_p(), mp::Real(1) / mp::Real::pi()));

    Interval lam = lambda_min(Interval(1.0));
    mp::Real pi2 = mp::Real::pi() * mp::Real::pi();
    CHECK(contains_mp(lam, pi2));
    CHECK(lam.lo() <= 9.8696044010893586);
    CHECK(lam.hi() >= 9.8696044010893586);
}

TEST_CASE("C_Omega and C_J scale linearly with the mesh size") {
    Interval c1 = constant_C_Omega(uniform_spatial(10));
    Interval c2 = constant_C_Omega(uniform_spatial(20));
    CHECK(c1.hi() / c2.hi() == Catch::Approx(2.0).epsilon(1e-10));

    Interval j1 = constant_C_J(uniform_temporal(1.0, 10));
    Interval j2 = constant_C_J(uniform_temporal(1.0, 40));
    CHECK(j1.hi() / j2.hi() == Catch::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("hat basis evaluation") {
    SpatialMesh m = uniform_spatial(4);
    // nodal property
    CHECK(eval_phi(m, 1, m.node(1)) == 1.0);
    CHECK(eval_phi(m, 1, m.node(2)) == 0.0);
    CHECK(eval_phi(m, 2, m.node(2)) == 1.0);
    CHECK_THROWS_AS(eval_phi(m, 9, 0.5), DomainError);

    // partition of unity including boundary hats
    for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
        double s = 0.0;
        for (int i = 0; i <= m.interior_nodes() + 1; ++i) s += eval_phi(m, i, x);
        CHECK(s == Catch::Approx(1.0).epsilon(1e-12));
    }

    TemporalMesh t = uniform_temporal(1.0, 4);
    for (int j = 1; j <= t.basis_size(); ++j) CHECK(eval_psi(t, j, 0.0) == 0.0);
    CHECK(eval_psi(t, 4, 1.0) == 1.0);
    CHECK(eval_psi(t, 2, t.node(2)) == 1.0);
    // slope is +-1/k on the two adjacent elements
    CHECK(eval_psi_dt(t, 2, 0.3) == Catch::Approx(4.0));
    CHECK(eval_psi_dt(t, 2, 0.6) == Catch::Approx(-4.0));
    CHECK(eval_psi_dt(t, 2, 0.9) == 0.0);
}
