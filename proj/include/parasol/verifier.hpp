#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parasol/constants.hpp"
#include "parasol/reference_solver.hpp"

// Per-interval verification: decompose u = u_ref + v + w, bound v through
// the heat semigroup and the linearized operator, bound w by a Schauder
// fixed-point argument on the candidate set W_{alpha,beta}, and propagate
// the initial mismatch to the next interval.

namespace parasol {

/// Initial data of one verification interval, known through norm bounds.
struct StepState {
    int index = 1;              // 1-based step number
    double t_start = 0.0;       // global start time (reporting only)
    Interval T{1.0};            // step length
    Interval epsH1{0.0}, epsL2{0.0};
};

/// Verified norm bounds for the linear part v (never materialized).
struct VNorms {
    Interval rho, rho_Omega;
    Interval ti_H1, ti_L2;      // at the right endpoint
    Interval l2_H1, l2_L2;      // space-time norms
    Interval v1_L2;             // time-derivative norm
    Interval sup_H1;            // pointwise-in-time H1 bound
    Interval linf;              // L-infinity bound over the cylinder
};

struct CandidateRadii {
    double alpha = rnd::kInf;
    double beta = rnd::kInf;
    bool verified = false;
    int iterations = 0;
};

/// rho(T) = exp(-lambda_min T); the lower eigenvalue endpoint drives the
/// upper bound of the decay factor automatically.
inline Interval decay_rho(const Interval& lam, const Interval& T) {
    return exp(-(lam * T));
}

/// rho_Omega(T) = sqrt((1 - rho(2T)) / (2 lambda_min)).
inline Interval decay_rho_Omega(const Interval& lam, const Interval& T) {
    Interval num = 1.0 - exp(-(2.0 * lam * T));
    if (num.lo() < 0) num = Interval(0.0, std::max(num.hi(), 0.0));
    return sqrt(num / (2.0 * lam));
}

/// The six norm estimates for v plus the 1D sup-norm bound
/// ||v||_inf <= (1/2) sup_t ||v(t)||_{H1_0}.
inline VNorms v_norm_bounds(const StepState& st, const LinearizedConstants& lc,
                            const Interval& c_b, const Interval& c_c, const Interval& nu,
                            const Interval& lam) {
    VNorms v;
    v.rho = decay_rho(lam, st.T);
    v.rho_Omega = decay_rho_Omega(lam, st.T);
    Interval theta = v.rho_Omega * (c_b * st.epsH1 + c_c * st.epsL2);
    Interval inv_sqrt_nu = sqrt(1.0 / nu);
    v.ti_H1 = v.rho * st.epsH1 + inv_sqrt_nu * lc.C_Delta * theta;
    v.ti_L2 = v.rho * st.epsL2 + lc.McalT * theta;
    v.l2_H1 = v.rho_Omega * st.epsH1 + lc.Mcal1 * theta;
    v.l2_L2 = v.rho_Omega * st.epsL2 + lc.Mcal0 * theta;
    v.sup_H1 = st.epsH1 + inv_sqrt_nu * lc.C_Delta * theta;
    v.v1_L2 = sqrt(nu / 2.0) * st.epsH1 + lc.C_Delta * theta;
    v.linf = 0.5 * v.sup_H1;
    return v;
}

/// K_tilde_w(p) = sqrt(2^p T) K_w(p)^p with
/// K_w(p) = p/(2 pi) (p-1)^{-1/(2p)} sin(pi/p)^{1/2}, for p in {2,3}.
inline Interval embedding_constant(int p, const Interval& T) {
    const Interval pi = constants::pi();
    Interval kw;
    if (p == 2) {
        kw = 1.0 / pi; // (p-1)^{-1/4} = 1, sin(pi/2) = 1
    } else if (p == 3) {
        Interval two_pow = exp(-(constants::ln2() / 6.0)); // 2^{-1/6}
        kw = (3.0 / (2.0 * pi)) * two_pow * sqrt(sqrt(Interval(3.0)) / 2.0);
    } else {
        throw DomainError("embedding_constant: p must be 2 or 3");
    }
    return sqrt(Interval(std::ldexp(1.0, p)) * T) * pow_int(kw, p);
}

/// ||(v+w)^2|| bound; the cross term 2||vw|| <= 2 C_p ||v||_inf alpha.
inline Interval G2_bound(const VNorms& v, double alpha, double beta, const Interval& T,
                         const Interval& c_p) {
    Interval a(alpha), b(beta);
    Interval k2 = embedding_constant(2, T);
    return v.linf * v.l2_L2 + k2 * (sqr(a) + sqr(b)) + 2.0 * c_p * v.linf * a;
}

/// ||(v+w)^3|| bound.
inline Interval G3_bound(const VNorms& v, double alpha, double beta, const Interval& T,
                         const Interval& c_p) {
    Interval a(alpha), b(beta);
    Interval k2 = embedding_constant(2, T);
    Interval k3 = embedding_constant(3, T);
    Interval ab = sqr(a) + sqr(b);
    return sqr(v.linf) * v.l2_L2 + k3 * ab * sqrt(ab) + 3.0 * v.linf * k2 * ab +
           3.0 * c_p * sqr(v.linf) * a;
}

/// G(alpha, beta) >= sup ||g_i(w)|| over the candidate set:
/// ||delta|| + C_d G2 + |g_3| G3 (the last two terms vanish for linear g).
class GFunction {
  public:
    GFunction(int g_degree, Interval delta, VNorms v, Interval T, Interval c_p, Interval c_d,
              Interval cubic)
        : degree_(g_degree), delta_(delta), v_(v), T_(T), c_p_(c_p), c_d_(c_d), cubic_(cubic) {
        if (g_degree > 3) throw ConfigError("unsupported nonlinearity degree");
    }

    Interval eval(double alpha, double beta) const {
        Interval g = delta_;
        if (degree_ >= 2) g += c_d_ * G2_bound(v_, alpha, beta, T_, c_p_);
        if (degree_ >= 3) g += cubic_ * G3_bound(v_, alpha, beta, T_, c_p_);
        return g;
    }

  private:
    int degree_;
    Interval delta_;
    VNorms v_;
    Interval T_, c_p_, c_d_, cubic_;
};

inline Interval G_total(const GFunction& g, double alpha, double beta) {
    return g.eval(alpha, beta);
}

/// Multiplicative-inflation fixed-point search for radii satisfying the
/// verification condition Mcal1 G < alpha, C_Delta G < beta (strictly, in
/// verified arithmetic).  Divergence is a value, not an error.
inline CandidateRadii find_radii(const LinearizedConstants& lc, const GFunction& g) {
    static constexpr double mu = 0.01;
    constexpr int max_iter = 100;
    // the next_up floor keeps the inflation strict even at subnormal scale
    auto inflate = [](double need) {
        return std::max((1.0 + mu) * need, rnd::next_up(std::max(need, 0.0)));
    };
    Interval g0 = g.eval(0.0, 0.0);
    double alpha = std::max(inflate((lc.Mcal1 * g0).hi()), 1e-300);
    double beta = std::max(inflate((lc.C_Delta * g0).hi()), 1e-300);
    for (int it = 1; it <= max_iter; ++it) {
        Interval gi = g.eval(alpha, beta);
        double need_a = (lc.Mcal1 * gi).hi();
        double need_b = (lc.C_Delta * gi).hi();
        if (need_a < alpha && need_b < beta) return {alpha, beta, true, it};
        alpha = inflate(need_a);
        beta = inflate(need_b);
        if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha > 1e120 || beta > 1e120)
            break;
    }
    return {rnd::kInf, rnd::kInf, false, max_iter};
}

/// eps_{i+1} bounds: ||v(t_i)|| plus the w-part at the endpoint.
inline std::pair<Interval, Interval> propagate_epsilon(const VNorms& v,
                                                       const LinearizedConstants& lc,
                                                       const CandidateRadii& radii,
                                                       const Interval& g_val,
                                                       const Interval& nu) {
    if (!radii.verified) throw StateError("propagate_epsilon: radii not verified");
    Interval h1 = v.ti_H1 + sqrt(1.0 / nu) * lc.C_Delta * g_val;
    Interval l2 = v.ti_L2 + lc.McalT * g_val;
    return {h1, l2};
}

// --- run orchestration ------------------------------------------------------

enum class StepStatus { ok, contraction_failure, radii_failed, solver_failure };

inline const char* to_string(StepStatus s) {
    switch (s) {
        case StepStatus::ok: return "ok";
        case StepStatus::contraction_failure: return "contraction_failure";
        case StepStatus::radii_failed: return "failed";
        case StepStatus::solver_failure: return "solver_failure";
    }
    return "?";
}

/// One row of the verification table (upper endpoints of verified bounds).
struct StepReport {
    int i = 0;
    double Mcal1 = 0, Mcal0 = 0, Mcalt = 0, C_Delta = 0;
    double M1 = 0, M0 = 0, MT = 0;
    double alpha = rnd::kInf, beta = rnd::kInf;
    double delta = 0;
    double epsH1_next = 0, epsL2_next = 0;
    StepStatus status = StepStatus::ok;
    std::string message;
    // diagnostics beyond the table columns
    double v_l2H1 = 0, v_l2L2 = 0, eps_H1 = 0, eps_L2 = 0;
};

struct RunPlan {
    int space_elems = 10;
    int time_elems = 100;
    int px = 5;
    int steps = 10;
    double T_step = 0.1;
};

struct RunReport {
    std::vector<StepReport> steps;
    ProjectionConstants constants;
    bool all_verified = false;
    int stabilized_at = -1; // first step where alpha settled (relative 1e-3 over 5 steps)
    double wall_seconds = 0;
};

/// The full time-evolution loop.  Stops early when a step cannot be
/// verified, recording the failing row.  Progress callback is optional.
inline RunReport run(const ProblemSpec& prob, const RunPlan& plan,
                     const std::function<void(const StepReport&)>& on_step = {}) {
    auto t0 = std::chrono::steady_clock::now();
    prob.validate();

    SpatialMesh smesh = uniform_spatial(plan.space_elems);
    TemporalMesh tmesh = uniform_temporal(plan.T_step, plan.time_elems);
    HermiteSpace space(smesh, plan.px);
    TensorBasis basis(smesh, tmesh);

    IMatrix A = assemble_A(basis), B = assemble_B(basis), M = assemble_M(basis);
    IMatrix U = assemble_U(basis), W = assemble_W(basis), Y = assemble_Y(basis);

    RunReport rep;
    rep.constants = projection_constants(smesh, tmesh, prob.nu, GammaInputs{&A, &B, &M, &U, &W, &Y});
    LinearizedWorkspace ws = prepare_linearized(A, M, U, Y);

    const Interval c_b(0.0);
    const Interval c_p = constant_C_p();
    const Interval lam = rep.constants.lam_min;
    const Interval T_len(tmesh.length());

    std::vector<double> u0_dofs = project_initial(space, prob);
    std::optional<SpaceTimePoly> prev;
    Interval epsH1(0.0), epsL2(0.0);
    bool ok = true;

    for (int i = 1; i <= plan.steps && ok; ++i) {
        StepReport row;
        row.i = i;
        try {
            SpaceTimePoly poly = solve_reference(prob, space, tmesh, u0_dofs);
            if (i == 1) {
                auto [h1, l2] = initial_mismatch(prob, poly);
                epsH1 = h1;
                epsL2 = l2;
            } else {
                // absorb the double-rounding of the DOF handoff into eps
                auto [jh1, jl2] = handoff_mismatch(*prev, poly);
                epsH1 += jh1;
                epsL2 += jl2;
            }
            row.eps_H1 = epsH1.hi();
            row.eps_L2 = epsL2.hi();

            LinearizationField lf = linearization_field(prob, poly);
            IMatrix G_mat = assemble_G(A, B, basis, lf.c, prob.nu);
            LinearizedConstants lc = linearized_constants_prepared(
                G_mat, M, U, Y, ws, rep.constants, c_b, Interval(0.0, lf.C_c.hi()));

            ResidualEnclosure delta = residual_norm(prob, poly);

            StepState st{i, (i - 1) * plan.T_step, T_len, Interval(0.0, epsH1.hi()),
                         Interval(0.0, epsL2.hi())};
            VNorms vn = v_norm_bounds(st, lc, c_b, Interval(0.0, lf.C_c.hi()), prob.nu, lam);

            GFunction g(prob.g_degree(), Interval(0.0, delta.norm.hi()), vn, T_len, c_p,
                        Interval(0.0, lf.C_d.hi()), lf.cubic);
            CandidateRadii radii = find_radii(lc, g);

            row.Mcal1 = lc.Mcal1.hi();
            row.Mcal0 = lc.Mcal0.hi();
            row.Mcalt = lc.McalT.hi();
            row.C_Delta = lc.C_Delta.hi();
            row.M1 = lc.M1.hi();
            row.M0 = lc.M0.hi();
            row.MT = lc.MT.hi();
            row.delta = delta.norm.hi();
            row.v_l2H1 = vn.l2_H1.hi();
            row.v_l2L2 = vn.l2_L2.hi();

            if (!radii.verified) {
                row.status = StepStatus::radii_failed;
                row.message = "candidate-set iteration diverged";
                ok = false;
            } else {
                row.alpha = radii.alpha;
                row.beta = radii.beta;
                Interval g_val = g.eval(radii.alpha, radii.beta);
                auto [eh1, el2] = propagate_epsilon(vn, lc, radii, g_val, prob.nu);
                epsH1 = Interval(0.0, eh1.hi());
                epsL2 = Interval(0.0, el2.hi());
                row.epsH1_next = epsH1.hi();
                row.epsL2_next = epsL2.hi();
                u0_dofs = poly.end_dofs_mid();
                prev.emplace(std::move(poly));
            }
        } catch (const ContractionFailure& e) {
            row.status = StepStatus::contraction_failure;
            row.message = e.what();
            ok = false;
        } catch (const ReferenceSolveFailure& e) {
            row.status = StepStatus::solver_failure;
            row.message = e.what();
            ok = false;
        } catch (const SingularityError& e) {
            row.status = StepStatus::contraction_failure;
            row.message = e.what();
            ok = false;
        } catch (const BoundFailure& e) {
            row.status = StepStatus::contraction_failure;
            row.message = e.what();
            ok = false;
        }
        rep.steps.push_back(row);
        if (on_step) on_step(rep.steps.back());
    }

    rep.all_verified = ok;
    // reported stabilization marker: alpha changing by less than 1e-3
    // relative over 5 consecutive verified steps
    for (std::size_t j = 4; j < rep.steps.size(); ++j) {
        bool settled = true;
        for (std::size_t k = j - 3; k <= j && settled; ++k) {
            const auto& cur = rep.steps[k], & prv = rep.steps[k - 1];
            if (cur.status != StepStatus::ok || prv.status != StepStatus::ok ||
                std::fabs(cur.alpha - prv.alpha) > 1e-3 * std::fabs(prv.alpha))
                settled = false;
        }
        if (settled) {
            rep.stabilized_at = rep.steps[j].i;
            break;
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace parasol
