#pragma once

#include <Eigen/Dense>
#include <optional>

#include "parasol/imatrix.hpp"

// Rigorous spectral bounds.
//
// The workhorse is a shifted-Cholesky certificate: if the textbook floating
// Cholesky factorization of the point matrix A runs to completion with
// factor L, then A + dA = L L^T with |dA| <= gamma_{n+1} |L||L|^T
// (Higham, Accuracy and Stability, Thm 10.3), hence
//     lambda_min(A) >= -gamma_{n+1} * || |L||L|^T ||_2.
// Certifying mu*I - mid(S) this way and adding a spectral bound for the
// entrywise deviation |mu*I - S' - A| of interval members S' yields a sound
// upper bound for lambda_max over every symmetric member of S.  A Gershgorin
// bound is the fallback when the factorization cannot be completed.

namespace parasol {

struct NormBound {
    enum class Method { shifted_cholesky, gershgorin };
    Interval value{0.0};  // upper endpoint is the certified bound
    Method method = Method::shifted_cholesky;
    double slack = 0.0;   // certificate residual, for diagnostics
};

namespace detail {

// Left-looking Cholesky; every entry is produced by the classical dot-product
// recurrence, which is the algorithm the backward-error constant covers.
inline bool floating_cholesky(Mat& a) {
    const int n = int(a.rows());
    for (int j = 0; j < n; ++j) {
        double d = a(j, j) - a.row(j).head(j).squaredNorm();
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        double ljj = std::sqrt(d);
        a(j, j) = ljj;
        if (j + 1 < n)
            a.col(j).tail(n - j - 1) =
                (a.col(j).tail(n - j - 1) -
                 a.bottomLeftCorner(n - j - 1, j) * a.row(j).head(j).transpose()) /
                ljj;
    }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) a(i, j) = 0.0;
    return true;
}

// On success: lambda_min(A) >= -rho for the exact point matrix A.
inline std::optional<double> chol_lambda_min_slack(Mat a) {
    const int n = int(a.rows());
    if (!floating_cholesky(a)) return std::nullopt;
    // || |L||L|^T ||_2 <= max row sum of |L||L|^T = max(|L| (|L|^T 1)).
    Eigen::VectorXd colsum(n), rowext(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = j; i < n; ++i) s = rnd::add_up(s, std::fabs(a(i, j)));
        colsum(j) = s;
    }
    double fmax = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s = rnd::add_up(s, rnd::mul_up(std::fabs(a(i, j)), colsum(j)));
        fmax = std::max(fmax, s);
    }
    double rho = rnd::mul_up(gamma_fp(3 * std::int64_t(n) + 3), fmax);
    return rnd::add_up(rho, underflow_guard(n));
}

inline double approx_eigmax(const Mat& a) {
    const int n = int(a.rows());
    if (n == 1) return a(0, 0);
    if (n <= 256) {
        Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
        if (es.info() == Eigen::Success) return es.eigenvalues().maxCoeff();
    }
    double shift = a.cwiseAbs().rowwise().sum().maxCoeff();
    auto run = [&](Eigen::VectorXd v) {
        v.normalize();
        for (int it = 0; it < 200; ++it) {
            v = a * v + shift * v;
            double nv = v.norm();
            if (!(nv > 0) || !std::isfinite(nv)) return -shift;
            v /= nv;
        }
        return double(v.dot(a * v));
    };
    Eigen::VectorXd v1 = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i) v1(i) += 1e-3 * ((i * 37 % 11) - 5);
    Eigen::VectorXd v2(n);
    for (int i = 0; i < n; ++i) v2(i) = (i % 2 == 0) ? 1.0 : -1.0;
    return std::max(run(v1), run(v2));
}

inline double gershgorin_max(const IMatrix& s) {
    double best = -rnd::kInf;
    for (int i = 0; i < s.rows(); ++i) {
        double row = s(i, i).hi();
        for (int j = 0; j < s.cols(); ++j)
            if (j != i) row = rnd::add_up(row, mag(s(i, j)));
        best = std::max(best, row);
    }
    return best;
}

} // namespace detail

inline IMatrix operator-(const IMatrix& a) {
    IMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
    r.symmetry_hint = a.symmetry_hint;
    return r;
}

inline IMatrix transpose(const IMatrix& a) {
    IMatrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    r.symmetry_hint = a.symmetry_hint;
    return r;
}

/// Upper bound of lambda_max over all symmetric members of S.
inline NormBound sym_eig_max_bound(const IMatrix& s) {
    const int n = s.rows();
    Mat am(n, n), ar(n, n);
    split_mid_rad(s, am, ar);
    double lam = detail::approx_eigmax(am);
    double scale = std::max({std::fabs(lam), norminf_up(am) * 0x1p-50, 0x1p-1000});

    struct Cert {
        double bound, slack;
    };
    auto certify = [&](double mu) -> std::optional<Cert> {
        Mat ap(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ap(i, j) = (i == j ? mu - am(i, j) : -am(i, j));
        auto rho = detail::chol_lambda_min_slack(ap);
        if (!rho) return std::nullopt;
        // spectral bound for the entrywise gap between mu*I - S' and ap
        IMatrix dev(n, n);
        Interval mu_iv(mu);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Interval exact = (i == j ? mu_iv - s(i, j) : -s(i, j));
                dev(i, j) = Interval(0.0, mag(exact - Interval(ap(i, j))));
            }
        double d2 = norm2_up(dev);
        return Cert{rnd::add_up(mu, rnd::add_up(*rho, d2)), rnd::add_up(*rho, d2)};
    };

    for (double t : {0x1p-44, 0x1p-30, 0x1p-16, 0x1p-8, 0x1p-3, 1.0, 4.0, 64.0, 1024.0}) {
        double mu = lam + t * scale;
        auto cert = certify(mu);
        if (!cert) continue;
        if (t >= 0x1p-16) {
            // The floating estimate was low; tighten by certified bisection.
            double lo = lam, hi = mu;
            for (int it = 0; it < 8; ++it) {
                double mid = 0.5 * (lo + hi);
                if (auto c2 = certify(mid)) {
                    hi = mid;
                    cert = c2;
                } else {
                    lo = mid;
                }
            }
        }
        return {Interval(std::min(lam, cert->bound), cert->bound),
                NormBound::Method::shifted_cholesky, cert->slack};
    }
    double g = detail::gershgorin_max(s);
    return {Interval(std::min(lam, g), g), NormBound::Method::gershgorin, 0.0};
}

/// Lower bound of lambda_min over all symmetric members (value.lo is the
/// certified endpoint).
inline NormBound sym_eig_min_bound(const IMatrix& s) {
    NormBound nb = sym_eig_max_bound(-s);
    return {Interval(-nb.value.hi(), -nb.value.lo()), nb.method, nb.slack};
}

/// Upper bound of ||P^{T/2} X||_E = sqrt(lambda_max(X^T P X)).
inline NormBound weighted_norm_bound(const IMatrix& p, const IMatrix& x) {
    IMatrix t = imatmul(imatmul(transpose(x), p), x);
    t.make_symmetric();
    NormBound eig = sym_eig_max_bound(t);
    double hi = rnd::sqrt_up(std::max(eig.value.hi(), 0.0));
    double lo = rnd::sqrt_down(std::max(eig.value.lo(), 0.0));
    return {Interval(lo, hi), eig.method, eig.slack};
}

/// Certified data shared by all sandwich norms with the same right weight Q.
struct QFactor {
    Mat lq;              // floating Cholesky factor of mid(Q)
    double eq_norm2_up;  // || Q - Lq Lq^T ||_2 over members
    double eigmax_hi;    // lambda_max(Q) upper bound
};

inline QFactor prepare_q(const IMatrix& q) {
    const int n = q.rows();
    Mat qm(n, n), qr(n, n);
    split_mid_rad(q, qm, qr);
    QFactor f;
    f.lq = qm;
    if (!detail::floating_cholesky(f.lq))
        throw BoundFailure("prepare_q: weight matrix is not numerically PSD");
    IMatrix eq = join_mid_rad(qm, qr); // = Q
    IMatrix llt = imatmul(f.lq, Mat(f.lq.transpose()));
    f.eq_norm2_up = norm2_up(eq - llt);
    f.eigmax_hi = sym_eig_max_bound(q).value.hi();
    return f;
}

/// Certified approximate inverse of K.
struct KInverse {
    Mat r;
    double e_up;      // ||I - K R||_2 bound, < 1
    double norm_r_up; // ||R||_2 bound
};

inline KInverse prepare_k(const IMatrix& k) {
    const int n = k.rows();
    Mat km(n, n), kr(n, n);
    split_mid_rad(k, km, kr);
    KInverse ki;
    ki.r = km.partialPivLu().inverse();
    if (!ki.r.allFinite()) throw SingularityError("prepare_k: inverse is not finite");
    IMatrix e = imatmul(k, ki.r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e(i, j) = (i == j ? Interval(1.0) - e(i, j) : -e(i, j));
    ki.e_up = norm2_up(e);
    if (!(ki.e_up < 1.0))
        throw SingularityError("prepare_k: residual norm of the approximate inverse >= 1");
    ki.norm_r_up = norm2_up(ki.r);
    return ki;
}

/// Upper bound of ||P^{T/2} K^{-1} Q^{1/2}||_E via
///   ||P^{T/2} R Q^{1/2}|| + ||P^{T/2}|| ||R|| e/(1-e) ||Q^{1/2}||,
/// where the first term is certified through the approximate Cholesky factor
/// of Q corrected by its verified factor residual:
///   lambda_max(S'Q) <= lambda_max(Lq^T S' Lq) + ||S'|| ||Q - Lq Lq^T||,
/// with S' = R^T P R.
inline NormBound inv_sandwich_norm_prepared(const IMatrix& p, double p_eigmax_hi,
                                            const KInverse& ki, const QFactor& qf) {
    IMatrix sp = imatmul(Mat(ki.r.transpose()), imatmul(p, ki.r));
    sp.make_symmetric();
    IMatrix h = imatmul(Mat(qf.lq.transpose()), imatmul(sp, qf.lq));
    h.make_symmetric();
    NormBound eig_h = sym_eig_max_bound(h);
    double t1sq = rnd::add_up(std::max(eig_h.value.hi(), 0.0),
                              rnd::mul_up(norm2_up(sp), qf.eq_norm2_up));
    double t1 = rnd::sqrt_up(t1sq);

    double pn = rnd::sqrt_up(std::max(p_eigmax_hi, 0.0));
    double qn = rnd::sqrt_up(std::max(qf.eigmax_hi, 0.0));
    double corr = rnd::mul_up(
        rnd::mul_up(rnd::mul_up(pn, ki.norm_r_up),
                    rnd::div_up(ki.e_up, rnd::sub_down(1.0, ki.e_up))),
        qn);
    double hi = rnd::add_up(t1, corr);
    return {Interval(std::min(t1, hi), hi), eig_h.method, corr};
}

inline NormBound inv_sandwich_norm(const IMatrix& p, const IMatrix& k, const IMatrix& q) {
    KInverse ki = prepare_k(k);
    QFactor qf = prepare_q(q);
    double pe = sym_eig_max_bound(p).value.hi();
    return inv_sandwich_norm_prepared(p, pe, ki, qf);
}

} // namespace parasol
