#pragma once

#include <vector>

#include "parasol/coefficient_field.hpp"
#include "parasol/imatrix.hpp"
#include "parasol/mesh.hpp"
#include "parasol/quadrature.hpp"

// Verified assembly of the space-time Galerkin matrices over the tensor
// basis {phi_i (x) psi_p}.  Every entry factors into (1D time integral) x
// (1D space integral) of P1 products; those are evaluated by interval
// Gauss-Legendre rules of exact degree, so enclosures carry rounding error
// only.

namespace parasol {

/// Tensor-product basis of S_h^k.  Flat index is time-major:
/// flat(p, i) = p*n + i for temporal basis p in [0,m) and spatial hat i in
/// [0,n) (equivalently (p-1)n + i in 1-based notation).
struct TensorBasis {
    const SpatialMesh* space;
    const TemporalMesh* time;

    TensorBasis(const SpatialMesh& s, const TemporalMesh& t) : space(&s), time(&t) {
        if (s.interior_nodes() < 1 || t.elements() < 1)
            throw EmptySpaceError("TensorBasis: empty verification space");
    }

    int n() const { return space->interior_nodes(); }
    int m() const { return time->basis_size(); }
    int dim() const { return n() * m(); }
    int flat(int p, int i) const { return p * n() + i; }
};

namespace detail {

// Active P1 basis functions on one element: pairs of (basis index, rising?).
// Spatial hats: index i in [0,n) is the hat at node x_{i+1}.  Temporal hats:
// index p in [0,m) is the hat at node s_{p+1} (all vanish at s_0).
inline std::vector<std::pair<int, bool>> active_hats(int elem, int nbasis) {
    std::vector<std::pair<int, bool>> v;
    if (elem - 1 >= 0 && elem - 1 < nbasis) v.push_back({elem - 1, false}); // falling
    if (elem < nbasis) v.push_back({elem, true});                          // rising
    return v;
}

struct Gram1D {
    IMatrix mass, stiff, convect; // convect[p][q] = int psi_q * psi_p' dt
};

inline Gram1D p1_gram(int nbasis, int elements, auto&& width) {
    Gram1D g{IMatrix(nbasis, nbasis), IMatrix(nbasis, nbasis), IMatrix(nbasis, nbasis)};
    const QuadRule01& rule = gauss_rule01(2); // exact through degree 3
    for (int e = 0; e < elements; ++e) {
        Interval w(width(e));
        auto act = active_hats(e, nbasis);
        for (auto [a, rising_a] : act)
            for (auto [b, rising_b] : act) {
                Interval mass(0.0), conv(0.0);
                for (std::size_t qp = 0; qp < rule.nodes.size(); ++qp) {
                    const Interval& xi = rule.nodes[qp];
                    Interval sa = rising_a ? xi : 1.0 - xi;
                    Interval sb = rising_b ? xi : 1.0 - xi;
                    mass += rule.weights[qp] * sa * sb;
                    // d/dt of hat a on this element is (+-1)/w
                    Interval da(rising_a ? 1.0 : -1.0);
                    conv += rule.weights[qp] * sb * da;
                }
                g.mass(a, b) += w * mass;
                double sgn = (rising_a == rising_b) ? 1.0 : -1.0;
                g.stiff(a, b) += Interval(sgn) / w;
                g.convect(a, b) += conv; // the 1/w slope factor cancels the width
            }
    }
    g.mass.symmetry_hint = true;
    g.stiff.symmetry_hint = true;
    return g;
}

inline Gram1D spatial_gram(const SpatialMesh& mesh) {
    return p1_gram(mesh.interior_nodes(), mesh.elements(),
                   [&](int e) { return mesh.width(e); });
}

inline Gram1D temporal_gram(const TemporalMesh& mesh) {
    return p1_gram(mesh.basis_size(), mesh.elements(), [&](int e) { return mesh.width(e); });
}

/// kron(T, X): entry(p*n+i, q*n+j) = T(p,q) * X(i,j).
// TODO: dense storage tops out around mn ~ 4000 (a matrix is mn^2 intervals);
// a lazily factored form would unlock the finest published meshes.
inline IMatrix kron_time_space(const IMatrix& T, const IMatrix& X) {
    int m = T.rows(), n = X.rows();
    IMatrix r(m * n, m * n);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            const Interval& t = T(p, q);
            if (t.lo() == 0 && t.hi() == 0) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) r(p * n + i, q * n + j) = t * X(i, j);
        }
    r.symmetry_hint = T.symmetry_hint && X.symmetry_hint;
    return r;
}

struct GramPair {
    Gram1D time, space;
    IMatrix y_time; // psi_p(T) psi_q(T)
};

inline GramPair grams(const TensorBasis& basis) {
    GramPair g{temporal_gram(*basis.time), spatial_gram(*basis.space),
               IMatrix(basis.m(), basis.m())};
    g.y_time(basis.m() - 1, basis.m() - 1) = Interval(1.0); // only the last hat is 1 at T
    g.y_time.symmetry_hint = true;
    return g;
}

} // namespace detail

// (d phi_J/dt, d phi_I/dt)_{L2L2} = Kt (x) Mx
inline IMatrix assemble_A(const TensorBasis& b) {
    auto g = detail::grams(b);
    return detail::kron_time_space(g.time.stiff, g.space.mass);
}

// (grad phi_J, grad phi_I) = Mt (x) Kx
inline IMatrix assemble_M(const TensorBasis& b) {
    auto g = detail::grams(b);
    return detail::kron_time_space(g.time.mass, g.space.stiff);
}

// (grad phi_J, d/dt grad phi_I) = Bt (x) Kx with Bt[p][q] = int psi_q psi_p'
inline IMatrix assemble_B(const TensorBasis& b) {
    auto g = detail::grams(b);
    return detail::kron_time_space(g.time.convect, g.space.stiff);
}

// (phi_J, phi_I) = Mt (x) Mx
inline IMatrix assemble_U(const TensorBasis& b) {
    auto g = detail::grams(b);
    return detail::kron_time_space(g.time.mass, g.space.mass);
}

// (d/dt grad phi_J, d/dt grad phi_I) = Kt (x) Kx
inline IMatrix assemble_W(const TensorBasis& b) {
    auto g = detail::grams(b);
    return detail::kron_time_space(g.time.stiff, g.space.stiff);
}

// (phi_J(.,T), phi_I(.,T))_{L2} = Yt (x) Mx
inline IMatrix assemble_Y(const TensorBasis& b) {
    auto g = detail::grams(b);
    return detail::kron_time_space(g.y_time, g.space.mass);
}

/// The c-coupling block C(I,J) = (c phi_J, d phi_I/dt); the two temporal
/// width factors cancel, leaving wx * int c * xhat_j * xhat_i * that_q *
/// that_p' over the unit cell.
inline IMatrix assemble_C(const TensorBasis& b, const CoefficientField& c) {
    IMatrix C(b.dim(), b.dim());
    int degx = c.max_degree_x() + 2;
    int degt = c.max_degree_t() + 1;
    const QuadRule01& rx = gauss_rule01(gauss_points_for_degree(degx));
    const QuadRule01& rt = gauss_rule01(gauss_points_for_degree(degt));
    const std::size_t nqx = rx.nodes.size(), nqt = rt.nodes.size();

    std::vector<Interval> cval(nqx * nqt);
    for (int ex = 0; ex < b.space->elements(); ++ex) {
        auto actx = detail::active_hats(ex, b.n());
        if (actx.empty()) continue;
        Interval wx(b.space->width(ex));
        for (int et = 0; et < b.time->elements(); ++et) {
            auto actt = detail::active_hats(et, b.m());
            const Poly2& poly = c.cell(ex, et);
            for (std::size_t i = 0; i < nqx; ++i)
                for (std::size_t j = 0; j < nqt; ++j)
                    cval[i * nqt + j] = poly.eval(rx.nodes[i], rt.nodes[j]);

            for (auto [it, rising_it] : actt)      // test temporal hat (p)
                for (auto [jt, rising_jt] : actt)  // trial temporal hat (q)
                    for (auto [ixi, rising_ix] : actx)
                        for (auto [jx, rising_jx] : actx) {
                            Interval acc(0.0);
                            for (std::size_t i = 0; i < nqx; ++i) {
                                const Interval& xi = rx.nodes[i];
                                Interval sx = (rising_ix ? xi : 1.0 - xi) *
                                              (rising_jx ? xi : 1.0 - xi);
                                Interval acct(0.0);
                                for (std::size_t j = 0; j < nqt; ++j) {
                                    const Interval& tau = rt.nodes[j];
                                    Interval st = rising_jt ? tau : 1.0 - tau;
                                    acct += rt.weights[j] * cval[i * nqt + j] * st;
                                }
                                acc += rx.weights[i] * sx * acct;
                            }
                            Interval dpt(rising_it ? 1.0 : -1.0);
                            C(b.flat(it, ixi), b.flat(jt, jx)) += wx * dpt * acc;
                        }
        }
    }
    return C;
}

/// G(I,J) = a(phi_J, phi_I) = A + nu*B + C.
inline IMatrix assemble_G(const TensorBasis& b, const CoefficientField& c,
                          const Interval& nu) {
    IMatrix g = assemble_A(b) + nu * assemble_B(b);
    if (!c.is_zero()) g = g + assemble_C(b, c);
    g.symmetry_hint = false;
    return g;
}

inline IMatrix assemble_G(const IMatrix& A, const IMatrix& B, const TensorBasis& b,
                          const CoefficientField& c, const Interval& nu) {
    IMatrix g = A + nu * B;
    if (!c.is_zero()) g = g + assemble_C(b, c);
    g.symmetry_hint = false;
    return g;
}

} // namespace parasol
