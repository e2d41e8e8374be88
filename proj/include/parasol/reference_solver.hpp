#pragma once

#include <Eigen/Dense>

#include "parasol/coefficient_field.hpp"
#include "parasol/imatrix.hpp"
#include "parasol/problem.hpp"
#include "parasol/spacetime_poly.hpp"

// Approximate solution machinery.  The solve itself is ordinary double
// precision (Galerkin in space over the Hermite basis, 2-stage Gauss
// collocation in time, Newton per temporal element, quadratic-in-time
// reconstruction through the left endpoint and the stage slopes).  Rigor
// enters afterwards: the residual, the initial mismatch and the coefficient
// ranges are interval enclosures computed from the stored coefficients.

namespace parasol {

struct ResidualEnclosure {
    Interval norm; // || g(u) - u_t + nu*u_xx ||_{L2(J;L2)}
};

struct LinearizationField {
    CoefficientField c; // -g'(u_ref), the linearized zero-order coefficient
    CoefficientField d; // g''(u_ref)/2, multiplies the quadratic remainder
    Interval C_c, C_d;  // sup-norm upper bounds
    Interval cubic;     // |g_3|, multiplies the cubic remainder
};

namespace detail {

struct GalerkinOperator {
    const HermiteSpace* space;
    const ProblemSpec* prob;
    Mat mass, stiff;
    Eigen::PartialPivLU<Mat> mass_lu;

    // reference-element shape values on a fixed quadrature rule
    std::vector<double> qx, qw;
    std::vector<std::vector<double>> shval; // [shape][point]

    GalerkinOperator(const HermiteSpace& sp, const ProblemSpec& pr) : space(&sp), prob(&pr) {
        const int nq = 12;
        const QuadRule01& rule = gauss_rule01(nq);
        for (int q = 0; q < nq; ++q) {
            qx.push_back(rule.nodes[std::size_t(q)].mid());
            qw.push_back(rule.weights[std::size_t(q)].mid());
        }
        const HermiteShapes& sh = sp.shapes();
        shval.resize(sh.coeff.size());
        for (std::size_t s = 0; s < sh.coeff.size(); ++s)
            for (int q = 0; q < nq; ++q) shval[s].push_back(sh.eval(int(s), qx[std::size_t(q)]));

        const int nd = sp.ndof();
        mass = Mat::Zero(nd, nd);
        stiff = Mat::Zero(nd, nd);
        for (int e = 0; e < sp.mesh().elements(); ++e) {
            double w = sp.mesh().width(e);
            auto dofs = sp.element_dofs(e);
            for (const auto& da : dofs) {
                if (da.global < 0) continue;
                for (const auto& db : dofs) {
                    if (db.global < 0) continue;
                    double m = 0, k = 0;
                    for (std::size_t q = 0; q < qx.size(); ++q) {
                        m += qw[q] * sh.eval(da.shape, qx[q]) * sh.eval(db.shape, qx[q]);
                        k += qw[q] * sh.eval_d(da.shape, qx[q]) * sh.eval_d(db.shape, qx[q]);
                    }
                    mass(da.global, db.global) += w * da.scale * db.scale * m;
                    stiff(da.global, db.global) += da.scale * db.scale * k / w;
                }
            }
        }
        mass_lu.compute(mass);
    }

    // F_a(u) = int g(u_h) N_a dx and its Jacobian int g'(u_h) N_a N_b dx
    void nonlinear(const Eigen::VectorXd& u, Eigen::VectorXd* f, Mat* jf) const {
        if (f) f->setZero(space->ndof());
        if (jf) jf->setZero(space->ndof(), space->ndof());
        for (int e = 0; e < space->mesh().elements(); ++e) {
            double w = space->mesh().width(e);
            auto dofs = space->element_dofs(e);
            for (std::size_t q = 0; q < qx.size(); ++q) {
                double uq = 0;
                for (const auto& d : dofs)
                    if (d.global >= 0)
                        uq += u(d.global) * d.scale * shval[std::size_t(d.shape)][q];
                double gq = prob->g_eval(uq), dgq = prob->g_deriv(uq);
                double wq = w * qw[q];
                for (const auto& da : dofs) {
                    if (da.global < 0) continue;
                    double na = da.scale * shval[std::size_t(da.shape)][q];
                    if (f) (*f)(da.global) += wq * gq * na;
                    if (jf)
                        for (const auto& db : dofs) {
                            if (db.global < 0) continue;
                            (*jf)(da.global, db.global) +=
                                wq * dgq * na * db.scale * shval[std::size_t(db.shape)][q];
                        }
                }
            }
        }
    }
};

} // namespace detail

inline std::vector<double> project_initial(const HermiteSpace& space, const ProblemSpec& prob) {
    return space.interpolate([&](double x) { return prob.u0_eval(x); },
                             [&](double x) { return prob.u0_deriv(x); },
                             [&](double x) { return prob.u0_deriv2(x); });
}

/// Time-march the Galerkin system over the step's temporal mesh starting
/// from the given DOF vector.  Newton runs until the stage residual drops
/// below 1e-12 in the infinity norm (at most 50 iterations).
inline SpaceTimePoly solve_reference(const ProblemSpec& prob, const HermiteSpace& space,
                                     const TemporalMesh& tmesh,
                                     const std::vector<double>& u0_dofs) {
    detail::GalerkinOperator op(space, prob);
    const int nd = space.ndof();
    const double nu = prob.nu_mid();
    const double s3 = std::sqrt(3.0);
    const double cs1 = 0.5 - s3 / 6.0, cs2 = 0.5 + s3 / 6.0;
    const double a11 = 0.25, a12 = 0.25 - s3 / 6.0, a21 = 0.25 + s3 / 6.0, a22 = 0.25;

    SpaceTimePoly out(space, tmesh);
    out.U0 = u0_dofs;

    Eigen::VectorXd u0 = Eigen::Map<const Eigen::VectorXd>(u0_dofs.data(), nd);
    Eigen::VectorXd k1(nd), k2(nd), f(nd), r(2 * nd), du(2 * nd);
    Mat jf(nd, nd), jac(2 * nd, 2 * nd);

    for (int e = 0; e < tmesh.elements(); ++e) {
        double wt = tmesh.width(e);
        // explicit slope as the starting guess for both stages
        op.nonlinear(u0, &f, nullptr);
        Eigen::VectorXd slope = op.mass_lu.solve(-nu * (op.stiff * u0) + f);
        k1 = slope;
        k2 = slope;

        bool converged = false;
        for (int it = 0; it < 50; ++it) {
            Eigen::VectorXd s1 = u0 + wt * (a11 * k1 + a12 * k2);
            Eigen::VectorXd s2 = u0 + wt * (a21 * k1 + a22 * k2);

            op.nonlinear(s1, &f, &jf);
            r.head(nd) = op.mass * k1 + nu * (op.stiff * s1) - f;
            Mat d1 = nu * op.stiff - jf;
            jac.topLeftCorner(nd, nd) = op.mass + wt * a11 * d1;
            jac.topRightCorner(nd, nd) = wt * a12 * d1;

            op.nonlinear(s2, &f, &jf);
            r.tail(nd) = op.mass * k2 + nu * (op.stiff * s2) - f;
            Mat d2 = nu * op.stiff - jf;
            jac.bottomLeftCorner(nd, nd) = wt * a21 * d2;
            jac.bottomRightCorner(nd, nd) = op.mass + wt * a22 * d2;

            if (r.lpNorm<Eigen::Infinity>() <= 1e-12) {
                converged = true;
                break;
            }
            du = jac.partialPivLu().solve(r);
            if (!du.allFinite()) break;
            k1 -= du.head(nd);
            k2 -= du.tail(nd);
        }
        if (!converged)
            throw ReferenceSolveFailure("Newton stalled in temporal element " +
                                        std::to_string(e));

        // quadratic reconstruction u(tau) = u0 + wt * int_0^tau (L1 k1 + L2 k2)
        for (int a = 0; a < nd; ++a) {
            out.c1_at(a, e) = wt * 3.0 * (cs2 * k1(a) - cs1 * k2(a)) / s3;
            out.c2_at(a, e) = wt * 3.0 * (k2(a) - k1(a)) / (2.0 * s3);
        }
        u0 += wt * 0.5 * (k1 + k2);
    }
    out.finalize();
    return out;
}

/// Rigorous enclosure of ||delta||_{L2(J;L2)}, delta = g(u) - u_t + nu*u_xx,
/// integrated cell by cell with Gauss rules of exact degree.
inline ResidualEnclosure residual_norm(const ProblemSpec& prob, const SpaceTimePoly& u) {
    const SpatialMesh& sm = u.space().mesh();
    const TemporalMesh& tm = u.tmesh();
    const int deg = prob.g_degree();
    Interval total(0.0);
    for (int ex = 0; ex < sm.elements(); ++ex) {
        Interval wx(sm.width(ex));
        Interval inv_wx2 = 1.0 / sqr(wx);
        for (int et = 0; et < tm.elements(); ++et) {
            Interval wt(tm.width(et));
            Poly2 p = u.cell_poly(ex, et);
            Poly2 gp = Poly2::constant(prob.g_coeff(0));
            if (deg >= 1) gp = gp + prob.g_coeff(1) * p;
            if (deg >= 2) {
                Poly2 p2 = p * p;
                gp = gp + prob.g_coeff(2) * p2;
                if (deg >= 3) gp = gp + prob.g_coeff(3) * (p2 * p);
            }
            Poly2 delta = gp - (1.0 / wt) * p.d_tau() +
                          (prob.nu * inv_wx2) * p.d_xi().d_xi();
            total += wx * wt * integrate01_sq(delta);
        }
    }
    return {sqrt(total)};
}

/// Verified (H1_0, L2) norms of u0 - u(t=0) for the first step.
inline std::pair<Interval, Interval> initial_mismatch(const ProblemSpec& prob,
                                                      const SpaceTimePoly& u) {
    const SpatialMesh& sm = u.space().mesh();
    Interval l2(0.0), h1(0.0);
    for (int ex = 0; ex < sm.elements(); ++ex) {
        Interval wx(sm.width(ex));
        Interval x0(sm.node(ex));
        Poly1 diff = compose_affine(prob.u0, x0, wx) - u.trace_poly(ex, false);
        l2 += wx * integrate01_sq(diff);
        h1 += integrate01_sq(diff.derivative()) / wx;
    }
    return {sqrt(h1), sqrt(l2)};
}

/// Verified (H1_0, L2) norms of the representation jump between the end of
/// one step's solution and the start of the next.
inline std::pair<Interval, Interval> handoff_mismatch(const SpaceTimePoly& prev,
                                                      const SpaceTimePoly& next) {
    const SpatialMesh& sm = next.space().mesh();
    Interval l2(0.0), h1(0.0);
    for (int ex = 0; ex < sm.elements(); ++ex) {
        Interval wx(sm.width(ex));
        Poly1 diff = prev.trace_poly(ex, true) - next.trace_poly(ex, false);
        l2 += wx * integrate01_sq(diff);
        h1 += integrate01_sq(diff.derivative()) / wx;
    }
    return {sqrt(h1), sqrt(l2)};
}

/// c = -g'(u_ref) and d = g''(u_ref)/2 as piecewise-polynomial fields with
/// verified range bounds.
inline LinearizationField linearization_field(const ProblemSpec& prob,
                                              const SpaceTimePoly& u) {
    const SpatialMesh& sm = u.space().mesh();
    const TemporalMesh& tm = u.tmesh();
    LinearizationField lf{CoefficientField(sm, tm), CoefficientField(sm, tm), Interval(0.0),
                          Interval(0.0), Interval(0.0)};
    Interval g1 = prob.g_coeff(1), g2 = prob.g_coeff(2), g3 = prob.g_coeff(3);
    for (int ex = 0; ex < sm.elements(); ++ex)
        for (int et = 0; et < tm.elements(); ++et) {
            Poly2 p = u.cell_poly(ex, et);
            Poly2 c = Poly2::constant(-g1) - 2.0 * g2 * p;
            if (!(g3.lo() == 0 && g3.hi() == 0)) c = c - 3.0 * g3 * (p * p);
            Poly2 d = Poly2::constant(g2) + 3.0 * g3 * p;
            lf.c.set_cell(ex, et, std::move(c));
            lf.d.set_cell(ex, et, std::move(d));
        }
    lf.C_c = coefficient_bounds(lf.c);
    lf.C_d = coefficient_bounds(lf.d);
    lf.cubic = Interval(mig(g3), mag(g3));
    return lf;
}

} // namespace parasol
