#include <catch2/catch_amalgamated.hpp>

#include "parasol/constants.hpp"
#include "support/mp.hpp"

using namespace parasol;

namespace {
bool encloses(const Interval& iv, const mp::Real& x) {
    return mp::Real(iv.lo()) <= x && x <= mp::Real(iv.hi());
}

struct Assembled {
    SpatialMesh sm;
    TemporalMesh tm;
    TensorBasis basis;
    IMatrix A, B, M, U, W, Y;

    Assembled(int ne, double T, int me)
        : sm(uniform_spatial(ne)), tm(uniform_temporal(T, me)), basis(sm, tm),
          A(assemble_A(basis)), B(assemble_B(basis)), M(assemble_M(basis)),
          U(assemble_U(basis)), W(assemble_W(basis)), Y(assemble_Y(basis)) {}

    GammaInputs inputs() const { return {&A, &B, &M, &U, &W, &Y}; }
};
} // namespace

TEST_CASE("operator constants at the reference resolution") {
    SpatialMesh sm = uniform_spatial(10);
    TemporalMesh tm = uniform_temporal(0.1, 100);
    ProjectionConstants pc;
    pc.nu = Interval(1.0);
    pc.C_Omega = constant_C_Omega(sm);
    pc.C_J = constant_C_J(tm);
    pc.C_inv = constant_C_inv(sm);
    full_discretization_constants(pc);

    // oracle: high-precision evaluation of the defining formulas
    mp::Real h(sm.h()), hmin(sm.h_min()), k(tm.k()), pi = mp::Real::pi();
    mp::Real com = h / pi, cinv = sqrt(mp::Real(12)) / hmin, cj = k / pi;
    mp::Real c1 = mp::Real(2) * com + cinv * cj;
    mp::Real c0 = mp::Real(8) * com * com + cj;
    mp::Real c0s = sqrt(mp::Real(8)) * com;

    CHECK(encloses(pc.C1, c1));
    CHECK(encloses(pc.C0, c0));
    CHECK(encloses(pc.c0, c0s));
    CHECK(pc.C1.hi() == Catch::Approx(0.0746884).epsilon(1e-4));
    CHECK(pc.c0.hi() == Catch::Approx(0.0900316).epsilon(1e-4));
}

TEST_CASE("base constants reduce when C_Omega vanishes") {
    ProjectionConstants pc;
    pc.nu = Interval(1.0);
    pc.C_Omega = Interval(0.0);
    pc.C_J = Interval(0.25);
    pc.C_inv = Interval(3.0);
    full_discretization_constants(pc);
    CHECK(pc.C1.contains(0.75));
    CHECK(pc.C1.width() < 1e-14);
    CHECK(pc.C0 == Interval(0.25));
    CHECK(pc.c0.contains(0.0));
}

TEST_CASE("gamma values on the single-cell basis match the closed form") {
    Assembled a(2, 1.0, 1); // A=1/3, B=2, M=4/3, W=4, U=1/9, Y=1/3
    ProjectionConstants pc;
    pc.nu = Interval(1.0);
    gammas(pc, a.inputs());

    // 1x1: gamma = nu * sqrt(P) * sqrt(W) / (A + nu B), here A + nu B = 7/3
    mp::Real denom = mp::Real::ratio(7, 3);
    mp::Real g1 = sqrt(mp::Real::ratio(4, 3)) * mp::Real(2) / denom;
    mp::Real g0 = sqrt(mp::Real::ratio(1, 9)) * mp::Real(2) / denom;
    mp::Real gT = sqrt(mp::Real::ratio(1, 3)) * mp::Real(2) / denom;
    CHECK(pc.gamma1.hi() >= g1.d());
    CHECK(pc.gamma1.hi() <= g1.d() * 1.0001);
    CHECK(pc.gamma0.hi() >= g0.d());
    CHECK(pc.gamma0.hi() <= g0.d() * 1.0001);
    CHECK(pc.gammaT.hi() >= gT.d());
    CHECK(pc.gammaT.hi() <= gT.d() * 1.0001);
}

TEST_CASE("tilde constants reduce to the base constants for gamma = 0") {
    ProjectionConstants pc;
    pc.nu = Interval(1.0);
    pc.C_Omega = Interval(0.01);
    pc.C_J = Interval(0.001);
    pc.C_inv = Interval(30.0);
    full_discretization_constants(pc);
    pc.gamma1 = pc.gamma0 = pc.gammaT = Interval(0.0);
    galerkin_projection_constants(pc);
    CHECK(pc.Ct1 == pc.C1);
    CHECK(pc.Ct0 == pc.C0);
    CHECK(pc.ct0 == pc.c0);
}

TEST_CASE("linearized cascade with vanishing coefficients") {
    Assembled a(4, 0.5, 4);
    ProjectionConstants pc =
        projection_constants(a.sm, a.tm, Interval(1.0), a.inputs());
    CoefficientField zero = constant_field(a.sm, a.tm, Interval(0.0));
    IMatrix g = assemble_G(a.A, a.B, a.basis, zero, Interval(1.0));
    LinearizedConstants lc =
        linearized_constants(g, a.A, a.M, a.U, a.Y, pc, Interval(0.0), Interval(0.0));

    CHECK(lc.tau == Interval(0.0));
    CHECK(lc.E.contains(1.0));
    CHECK(lc.kappa == Interval(0.0));
    CHECK(lc.C_Delta.contains(1.0));
    CHECK(lc.C_Q.contains(1.0));
    // Mcal1 = M1 + Ct1 when C_Q = C_Delta = 1
    CHECK(lc.Mcal1.hi() >= lc.M1.lo() + pc.Ct1.lo());
    CHECK(lc.Mcal1.hi() <= (lc.M1.hi() + pc.Ct1.hi()) * (1 + 1e-12));
}

TEST_CASE("contraction failure is raised when kappa cannot be below 1") {
    Assembled a(2, 1.0, 2);
    ProjectionConstants pc =
        projection_constants(a.sm, a.tm, Interval(1.0), a.inputs());
    CoefficientField zero = constant_field(a.sm, a.tm, Interval(0.0));
    IMatrix g = assemble_G(a.A, a.B, a.basis, zero, Interval(1.0));
    CHECK_THROWS_AS(linearized_constants(g, a.A, a.M, a.U, a.Y, pc, Interval(0.0),
                                         Interval(1000.0)),
                    ContractionFailure);
}

TEST_CASE("refining the temporal mesh does not increase C1") {
    SpatialMesh sm = uniform_spatial(10);
    auto c1_for = [&](int me) {
        ProjectionConstants pc;
        pc.nu = Interval(1.0);
        pc.C_Omega = constant_C_Omega(sm);
        pc.C_inv = constant_C_inv(sm);
        pc.C_J = constant_C_J(uniform_temporal(0.1, me));
        full_discretization_constants(pc);
        return pc.C1.hi();
    };
    CHECK(c1_for(200) <= c1_for(100));
    CHECK(c1_for(100) <= c1_for(50));
}

TEST_CASE("script-M constants dominate both cascade summands") {
    Assembled a(4, 0.5, 4);
    ProjectionConstants pc =
        projection_constants(a.sm, a.tm, Interval(1.0), a.inputs());
    CoefficientField c = constant_field(a.sm, a.tm, Interval(-0.5));
    IMatrix g = assemble_G(a.A, a.B, a.basis, c, Interval(1.0));
    LinearizedConstants lc =
        linearized_constants(g, a.A, a.M, a.U, a.Y, pc, Interval(0.0), Interval(0.5));
    CHECK(lc.Mcal1.hi() >= (pc.Ct1 * lc.C_Delta).lo());
    CHECK(lc.Mcal1.hi() >= (lc.M1 * lc.C_Q).lo());
    CHECK(lc.Mcal0.hi() >= (pc.Ct0 * lc.C_Delta).lo());
    CHECK(lc.McalT.hi() >= (pc.ct0 * lc.C_Delta).lo());
    // enclosure straddling the threshold counts as failure
    CHECK(lc.kappa.hi() < 1.0);
}

TEST_CASE("tilde constants never fall below their base constants") {
    Assembled a(5, 0.25, 3);
    ProjectionConstants pc =
        projection_constants(a.sm, a.tm, Interval(0.5), a.inputs());
    CHECK(pc.Ct1.hi() >= pc.C1.lo());
    CHECK(pc.Ct0.hi() >= pc.C0.lo());
    CHECK(pc.ct0.hi() >= pc.c0.lo());
}
