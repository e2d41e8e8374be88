#include <catch2/catch_amalgamated.hpp>

#include "parasol/verifier.hpp"
#include "support/mp.hpp"

using namespace parasol;

namespace {

LinearizedConstants plain_constants(double m1, double cdelta) {
    LinearizedConstants lc;
    lc.M1 = Interval(m1 * 0.25);
    lc.M0 = Interval(m1 * 0.1);
    lc.MT = Interval(m1 * 0.3);
    lc.C_Delta = Interval(cdelta);
    lc.C_Q = Interval(1.0);
    lc.Mcal1 = Interval(m1);
    lc.Mcal0 = Interval(m1 * 0.3);
    lc.McalT = Interval(m1 * 0.5);
    lc.tau = Interval(0.0);
    lc.E = Interval(1.0);
    lc.kappa = Interval(0.0);
    return lc;
}

VNorms zero_vnorms(const Interval& lam, const Interval& T) {
    StepState st{1, 0.0, T, Interval(0.0), Interval(0.0)};
    return v_norm_bounds(st, plain_constants(1.0, 1.0), Interval(0.0), Interval(0.0),
                         Interval(1.0), lam);
}

} // namespace

TEST_CASE("decay factors against high-precision evaluation") {
    Interval lam = lambda_min(Interval(1.0));
    Interval T(0.1);
    Interval rho = decay_rho(lam, T);
    Interval rhoO = decay_rho_Omega(lam, T);

    mp::Real pi2 = mp::Real::pi() * mp::Real::pi();
    mp::Real rho_ex = exp(-(pi2 * mp::Real::ratio(1, 10)));
    mp::Real rhoO_ex =
        sqrt((mp::Real(1) - exp(-(mp::Real(2) * pi2 * mp::Real::ratio(1, 10)))) /
             (mp::Real(2) * pi2));
    CHECK(mp::Real(rho.lo()) <= rho_ex);
    CHECK(rho_ex <= mp::Real(rho.hi()));
    CHECK(mp::Real(rhoO.lo()) <= rhoO_ex);
    CHECK(rhoO_ex <= mp::Real(rhoO.hi()));
    CHECK(rho.hi() == Catch::Approx(0.37271).epsilon(1e-3));
    CHECK(rhoO.hi() == Catch::Approx(0.20886).epsilon(1e-3));
}

TEST_CASE("decay factor ranges over a step-length sweep") {
    Interval lam = lambda_min(from_ratio(1, 150));
    for (double T : {1e-3, 0.01, 0.1, 0.5, 1.0, 5.0, 40.0}) {
        Interval rho = decay_rho(lam, Interval(T));
        Interval rhoO = decay_rho_Omega(lam, Interval(T));
        CHECK(rho.lo() > 0.0);
        CHECK(rho.hi() <= 1.0 + 1e-15);
        CHECK(rhoO.hi() <= std::sqrt(T) * (1 + 1e-12));
    }
}

TEST_CASE("v bounds vanish with the initial mismatch") {
    VNorms v = zero_vnorms(lambda_min(Interval(1.0)), Interval(0.25));
    CHECK(v.ti_H1.hi() == 0.0);
    CHECK(v.ti_L2.hi() == 0.0);
    CHECK(v.l2_H1.hi() == 0.0);
    CHECK(v.l2_L2.hi() == 0.0);
    CHECK(v.v1_L2.hi() == 0.0);
    CHECK(v.linf.hi() == 0.0);
}

TEST_CASE("v bounds reduce to pure decay when coefficients vanish") {
    Interval lam = lambda_min(Interval(1.0));
    Interval T(0.3);
    StepState st{1, 0.0, T, Interval(1.0), Interval(0.4)};
    LinearizedConstants lc = plain_constants(2.0, 3.0);
    VNorms v = v_norm_bounds(st, lc, Interval(0.0), Interval(0.0), Interval(1.0), lam);
    CHECK(v.ti_H1.hi() == decay_rho(lam, T).hi());
    CHECK(v.l2_H1.hi() == decay_rho_Omega(lam, T).hi());
    CHECK(v.v1_L2.hi() == sqrt(Interval(1.0) / 2.0).hi());
    CHECK(v.sup_H1.hi() == 1.0);
    CHECK(v.linf.hi() == 0.5);
}

TEST_CASE("embedding constants respect the known caps and scaling") {
    for (double T : {0.01, 0.1, 1.0, 10.0}) {
        double cap2 = 0.2027 * std::sqrt(T), cap3 = 0.1755 * std::sqrt(T);
        CHECK(embedding_constant(2, Interval(T)).hi() < cap2);
        CHECK(embedding_constant(3, Interval(T)).hi() < cap3);
    }
    CHECK_THROWS_AS(embedding_constant(4, Interval(1.0)), DomainError);
    // sqrt(T) scaling
    double r = embedding_constant(2, Interval(0.01)).hi() /
               embedding_constant(2, Interval(1.0)).hi();
    CHECK(r == Catch::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("G2/G3 reductions and direct formula check") {
    Interval T(1.0), cp = constant_C_p();
    VNorms v0 = zero_vnorms(lambda_min(Interval(1.0)), T);
    CHECK(G2_bound(v0, 0.0, 0.0, T, cp).hi() == 0.0);
    CHECK(G3_bound(v0, 0.0, 0.0, T, cp).hi() == 0.0);

    Interval k2 = embedding_constant(2, T), k3 = embedding_constant(3, T);
    Interval g2 = G2_bound(v0, 0.5, 0.25, T, cp);
    CHECK(g2.hi() == Catch::Approx((k2 * Interval(0.3125)).hi()).epsilon(1e-12));
    Interval g3 = G3_bound(v0, 0.5, 0.25, T, cp);
    CHECK(g3.hi() ==
          Catch::Approx((k3 * Interval(0.3125) * sqrt(Interval(0.3125))).hi()).epsilon(1e-12));

    // all v-norms = 1 against a high-precision rebuild of the formula
    VNorms ones = v0;
    ones.linf = ones.l2_L2 = Interval(1.0);
    Interval got = G2_bound(ones, 1.0, 1.0, T, cp);
    mp::Real pi = mp::Real::pi();
    mp::Real k2_ex = mp::Real(2) / (pi * pi); // sqrt(4T) (1/pi)^2 at T=1
    mp::Real expected = mp::Real(1) + k2_ex * mp::Real(2) + mp::Real(2) / pi;
    CHECK(mp::Real(got.lo()) <= expected);
    CHECK(expected <= mp::Real(got.hi()));
}

TEST_CASE("G_total assembles the degree-specific pieces") {
    Interval T(1.0), cp = constant_C_p();
    VNorms v0 = zero_vnorms(lambda_min(Interval(1.0)), T);

    // quadratic nonlinearity with zero residual and v == 0
    GFunction fq(2, Interval(0.0), v0, T, cp, Interval(1.0), Interval(0.0));
    CHECK(G_total(fq, 0.0, 0.0).hi() == 0.0);

    // cubic: G = C_d K2 (a^2+b^2) + K3 (a^2+b^2)^{3/2}
    Interval cd(1.01), cubic(1.0);
    GFunction fc(3, Interval(0.0), v0, T, cp, cd, cubic);
    Interval ab(0.3 * 0.3 + 0.4 * 0.4);
    Interval expect = cd * embedding_constant(2, T) * ab +
                      cubic * embedding_constant(3, T) * ab * sqrt(ab);
    Interval got = G_total(fc, 0.3, 0.4);
    CHECK(got.hi() == Catch::Approx(expect.hi()).epsilon(1e-12));

    CHECK_THROWS_AS(GFunction(4, Interval(0.0), v0, T, cp, cd, cubic), ConfigError);
}

TEST_CASE("radius search: trivial and affine cases") {
    Interval T(0.5), cp = constant_C_p();
    VNorms v0 = zero_vnorms(lambda_min(Interval(1.0)), T);
    LinearizedConstants lc = plain_constants(2.0, 5.0);

    // G == 0: any positive radii verify
    GFunction gz(2, Interval(0.0), v0, T, cp, Interval(1.0), Interval(0.0));
    CandidateRadii rz = find_radii(lc, gz);
    CHECK(rz.verified);
    CHECK(rz.alpha > 0.0);
    CHECK(rz.alpha < 1e-200);

    // degree <= 1: G is the constant ||delta||
    GFunction gc(1, Interval(0.125), v0, T, cp, Interval(0.0), Interval(0.0));
    CandidateRadii rc = find_radii(lc, gc);
    CHECK(rc.verified);
    CHECK(rc.alpha == Catch::Approx(1.01 * 2.0 * 0.125).epsilon(1e-9));
    CHECK(rc.beta == Catch::Approx(1.01 * 5.0 * 0.125).epsilon(1e-9));

    // idempotent certificate: re-check the strict inequalities
    Interval gval = gc.eval(rc.alpha, rc.beta);
    CHECK((lc.Mcal1 * gval).hi() < rc.alpha);
    CHECK((lc.C_Delta * gval).hi() < rc.beta);
}

TEST_CASE("monotone failure in the residual size") {
    Interval T(1.0), cp = constant_C_p();
    VNorms v0 = zero_vnorms(lambda_min(Interval(1.0)), T);
    LinearizedConstants lc = plain_constants(1.5, 2.0);
    bool failed_before = false;
    for (double delta : {1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 5.0, 50.0}) {
        GFunction g(2, Interval(delta), v0, T, cp, Interval(1.0), Interval(0.0));
        CandidateRadii r = find_radii(lc, g);
        if (failed_before) CHECK_FALSE(r.verified);
        if (!r.verified) failed_before = true;
    }
    CHECK(failed_before); // large residuals must eventually fail
}

TEST_CASE("epsilon propagation") {
    Interval T(0.5), cp = constant_C_p();
    VNorms v0 = zero_vnorms(lambda_min(Interval(1.0)), T);
    LinearizedConstants lc = plain_constants(2.0, 5.0);
    GFunction gz(2, Interval(0.0), v0, T, cp, Interval(1.0), Interval(0.0));
    CandidateRadii r = find_radii(lc, gz);
    auto [h1, l2] = propagate_epsilon(v0, lc, r, gz.eval(r.alpha, r.beta), Interval(1.0));
    CHECK(h1.hi() < 1e-150);
    CHECK(l2.hi() < 1e-150);

    CandidateRadii failed;
    CHECK_FALSE(failed.verified);
    CHECK_THROWS_AS(propagate_epsilon(v0, lc, failed, Interval(0.0), Interval(1.0)),
                    StateError);
}

TEST_CASE("zero initial data verifies with vanishing radii") {
    ProblemSpec p;
    p.nu = Interval(1.0);
    p.g = {Interval(0.0), Interval(0.0), Interval(1.0)};
    p.u0 = {Interval(0.0)};
    RunPlan plan{4, 4, 3, 6, 0.25};
    RunReport rep = run(p, plan);
    REQUIRE(rep.all_verified);
    REQUIRE(rep.steps.size() == 6);
    for (const auto& s : rep.steps) {
        CHECK(s.status == StepStatus::ok);
        CHECK(s.alpha < 1e-100);
        CHECK(s.epsL2_next < 1e-100);
    }
    // alpha is constant here, so the settling marker fires at step 5
    CHECK(rep.stabilized_at == 5);
}

TEST_CASE("coarse discretization fails by contraction, not by a wrong bound") {
    ProblemSpec p = make_fujita();
    RunPlan plan{3, 4, 3, 2, 0.05};
    RunReport rep = run(p, plan);
    CHECK_FALSE(rep.all_verified);
    REQUIRE(!rep.steps.empty());
    CHECK(rep.steps.front().status == StepStatus::contraction_failure);
}
