#pragma once

#include "parasol/mesh.hpp"
#include "parasol/tensor_basis.hpp"
#include "parasol/verified_linalg.hpp"

namespace parasol {

/// Verified upper bounds of the projection-error constant cascade, together
/// with the mesh data they were derived from.
struct ProjectionConstants {
    double h = 0, k = 0;
    Interval nu{1.0};
    Interval C_Omega, C_J, C_inv, C_p, lam_min;
    Interval C1, C0, c0;          // full-discretization operator constants
    Interval gamma1, gamma0, gammaT;
    Interval Ct1, Ct0, ct0;       // tilde constants (Galerkin projection)
};

/// C1 = (2/nu) C_Omega + C_inv C_J,  C0 = (8/nu) C_Omega^2 + C_J,
/// c0 = sqrt(8/nu) C_Omega.
inline void full_discretization_constants(ProjectionConstants& pc) {
    const Interval& nu = pc.nu;
    pc.C1 = (2.0 / nu) * pc.C_Omega + pc.C_inv * pc.C_J;
    pc.C0 = (8.0 / nu) * sqr(pc.C_Omega) + pc.C_J;
    pc.c0 = sqrt(8.0 / nu) * pc.C_Omega;
}

/// gamma_1 = nu ||M^{T/2} (A + nu B)^{-1} W^{1/2}||, and the U/Y variants.
struct GammaInputs {
    const IMatrix *A, *B, *M, *U, *W, *Y;
};

inline void gammas(ProjectionConstants& pc, const GammaInputs& in) {
    IMatrix k_mat = *in.A + pc.nu * *in.B;
    KInverse ki = prepare_k(k_mat);
    QFactor qf = prepare_q(*in.W);
    auto one = [&](const IMatrix& p) {
        double pe = sym_eig_max_bound(p).value.hi();
        NormBound nb = inv_sandwich_norm_prepared(p, pe, ki, qf);
        return pc.nu * Interval(0.0, nb.value.hi());
    };
    pc.gamma1 = one(*in.M);
    pc.gamma0 = one(*in.U);
    pc.gammaT = one(*in.Y);
}

/// Tilde constants of the full-discrete projection Q_h^k.
inline void galerkin_projection_constants(ProjectionConstants& pc) {
    Interval cjci = pc.C_J * pc.C_inv;
    pc.Ct1 = pc.C1 + cjci * pc.gamma1;
    pc.Ct0 = pc.C0 + cjci * pc.gamma0;
    pc.ct0 = pc.c0 + cjci * pc.gammaT;
}

inline ProjectionConstants projection_constants(const SpatialMesh& sm, const TemporalMesh& tm,
                                                const Interval& nu, const GammaInputs& in) {
    ProjectionConstants pc;
    pc.h = sm.h();
    pc.k = tm.k();
    pc.nu = nu;
    pc.C_Omega = constant_C_Omega(sm);
    pc.C_J = constant_C_J(tm);
    pc.C_inv = constant_C_inv(sm);
    pc.C_p = constant_C_p();
    pc.lam_min = lambda_min(nu);
    full_discretization_constants(pc);
    gammas(pc, in);
    galerkin_projection_constants(pc);
    return pc;
}

/// Verified bounds for the linearized solution operator on one step.
struct LinearizedConstants {
    Interval C_b, C_c;
    Interval M1, M0, MT;
    Interval tau, E, kappa;
    Interval C_Delta, C_Q;
    Interval Mcal1, Mcal0, McalT;
};

namespace detail {

// tau, E, kappa, C_Delta, C_Q and the script-M constants from M1/M0/MT.
// Throws ContractionFailure unless kappa is verifiably below 1 (an enclosure
// straddling 1 counts as failure).
inline void finish_linearized_cascade(LinearizedConstants& lc, const ProjectionConstants& pc,
                                      const Interval& c_b, const Interval& c_c) {
    lc.C_b = c_b;
    lc.C_c = c_c;
    lc.tau = pc.Ct1 * c_b + pc.Ct0 * c_c;
    lc.E = lc.M1 * c_b + lc.M0 * c_c + 1.0;
    lc.kappa = lc.tau * lc.E;
    if (!(lc.kappa.hi() < 1.0))
        throw ContractionFailure("kappa(h,k) is not verifiably below 1");
    lc.C_Delta = lc.E / (1.0 - lc.kappa);
    lc.C_Q = lc.tau * lc.C_Delta + 1.0;
    lc.Mcal1 = lc.M1 * lc.C_Q + pc.Ct1 * lc.C_Delta;
    lc.Mcal0 = lc.M0 * lc.C_Q + pc.Ct0 * lc.C_Delta;
    lc.McalT = lc.MT * lc.C_Q + pc.ct0 * lc.C_Delta;
}

} // namespace detail

/// Certified factors that do not change from step to step (A, M, U, Y live
/// on the fixed tensor basis; only G carries the linearization).
struct LinearizedWorkspace {
    QFactor qf_a;
    double eig_m, eig_u, eig_y;
};

inline LinearizedWorkspace prepare_linearized(const IMatrix& a_mat, const IMatrix& m_mat,
                                              const IMatrix& u_mat, const IMatrix& y_mat) {
    return {prepare_q(a_mat), sym_eig_max_bound(m_mat).value.hi(),
            sym_eig_max_bound(u_mat).value.hi(), sym_eig_max_bound(y_mat).value.hi()};
}

inline LinearizedConstants linearized_constants_prepared(
    const IMatrix& g_mat, const IMatrix& m_mat, const IMatrix& u_mat, const IMatrix& y_mat,
    const LinearizedWorkspace& ws, const ProjectionConstants& pc, const Interval& c_b,
    const Interval& c_c) {
    LinearizedConstants lc;
    KInverse ki = prepare_k(g_mat);
    lc.M1 = Interval(0.0, inv_sandwich_norm_prepared(m_mat, ws.eig_m, ki, ws.qf_a).value.hi());
    lc.M0 = Interval(0.0, inv_sandwich_norm_prepared(u_mat, ws.eig_u, ki, ws.qf_a).value.hi());
    lc.MT = Interval(0.0, inv_sandwich_norm_prepared(y_mat, ws.eig_y, ki, ws.qf_a).value.hi());
    detail::finish_linearized_cascade(lc, pc, c_b, c_c);
    return lc;
}

/// Inputs: G and the weight matrices on the same tensor basis, plus the
/// projection constants and the sup-norm bounds of the coefficients.
inline LinearizedConstants linearized_constants(const IMatrix& g_mat, const IMatrix& a_mat,
                                                const IMatrix& m_mat, const IMatrix& u_mat,
                                                const IMatrix& y_mat,
                                                const ProjectionConstants& pc,
                                                const Interval& c_b, const Interval& c_c) {
    LinearizedWorkspace ws = prepare_linearized(a_mat, m_mat, u_mat, y_mat);
    return linearized_constants_prepared(g_mat, m_mat, u_mat, y_mat, ws, pc, c_b, c_c);
}

} // namespace parasol
