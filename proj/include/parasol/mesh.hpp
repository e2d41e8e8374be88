#pragma once

#include <vector>

#include "parasol/errors.hpp"
#include "parasol/interval.hpp"

namespace parasol {

namespace detail {

// Element widths must be exact doubles: the piecewise-polynomial machinery
// defines basis functions through them, and exactness is what makes the
// C^1 spatial continuity of reconstructed fields hold as real functions.
// For meshes on (0,1) and on step intervals this follows from the Sterbenz
// lemma; it is asserted here rather than assumed.
inline void check_exact_widths(const std::vector<double>& nodes) {
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        double w = nodes[j + 1] - nodes[j];
        if (!(w > 0)) throw MeshError("mesh nodes must be strictly increasing");
        if (rnd::two_sum_err(nodes[j + 1], -nodes[j], w) != 0.0)
            throw MeshError("mesh element width not exactly representable");
    }
}

} // namespace detail

/// 1D spatial mesh on Omega = (0,1).  Interior nodes carry the P1 hat basis
/// of S_h; n is the number of interior nodes (= dim S_h).
class SpatialMesh {
  public:
    explicit SpatialMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2 || nodes_.front() != 0.0 || nodes_.back() != 1.0)
            throw MeshError("spatial mesh must span [0,1]");
        detail::check_exact_widths(nodes_);
    }

    int elements() const { return int(nodes_.size()) - 1; }
    int interior_nodes() const { return int(nodes_.size()) - 2; }
    double node(int j) const { return nodes_[std::size_t(j)]; }
    double width(int e) const { return nodes_[std::size_t(e) + 1] - nodes_[std::size_t(e)]; }

    double h() const {
        double m = 0.0;
        for (int e = 0; e < elements(); ++e) m = std::max(m, width(e));
        return m;
    }
    double h_min() const {
        double m = rnd::kInf;
        for (int e = 0; e < elements(); ++e) m = std::min(m, width(e));
        return m;
    }

  private:
    std::vector<double> nodes_;
};

/// Temporal mesh for one verification step, in step-local time (0, T_i).
/// The V^1_k basis functions vanish at the left endpoint, so there are
/// m = elements() of them, one per node s_1..s_m.
class TemporalMesh {
  public:
    explicit TemporalMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2 || nodes_.front() != 0.0)
            throw MeshError("temporal mesh must start at 0");
        detail::check_exact_widths(nodes_);
    }

    int elements() const { return int(nodes_.size()) - 1; }
    int basis_size() const { return elements(); }
    double node(int j) const { return nodes_[std::size_t(j)]; }
    double width(int e) const { return nodes_[std::size_t(e) + 1] - nodes_[std::size_t(e)]; }
    double length() const { return nodes_.back(); }

    double k() const {
        double m = 0.0;
        for (int e = 0; e < elements(); ++e) m = std::max(m, width(e));
        return m;
    }

  private:
    std::vector<double> nodes_;
};

// Node sequences of the form fl(j*s) have exactly representable element
// widths: fl((j+1)s) <= 2*fl(js) entrywise, so the Sterbenz lemma applies.
inline SpatialMesh uniform_spatial(int n_elems) {
    if (n_elems < 1) throw MeshError("uniform_spatial: need at least one element");
    std::vector<double> nodes(std::size_t(n_elems) + 1);
    for (int j = 0; j <= n_elems; ++j)
        nodes[std::size_t(j)] = static_cast<double>(j) / n_elems;
    return SpatialMesh(std::move(nodes));
}

/// Uniform temporal mesh; the realized length nodes.back() may differ from
/// the requested T_i by an ulp and is the value all downstream bounds use.
inline TemporalMesh uniform_temporal(double T_i, int m) {
    if (m < 1 || !(T_i > 0)) throw MeshError("uniform_temporal: need T_i > 0, m >= 1");
    std::vector<double> nodes(std::size_t(m) + 1);
    double k = T_i / m;
    for (int j = 0; j <= m; ++j) nodes[std::size_t(j)] = j * k;
    return TemporalMesh(std::move(nodes));
}

// --- elementary constants -------------------------------------------------
//
// On (0,1) with P1 elements: C_Omega(h) = h/pi, C_inv(h) = sqrt(12)/h_min,
// C_J(k) = k/pi, C_p = 1/pi, lambda_min = nu*pi^2.

inline Interval constant_C_Omega(const SpatialMesh& mesh) {
    return Interval(mesh.h()) / constants::pi();
}

inline Interval constant_C_J(const TemporalMesh& mesh) {
    return Interval(mesh.k()) / constants::pi();
}

inline Interval constant_C_inv(const SpatialMesh& mesh) {
    return sqrt(Interval(12.0)) / Interval(mesh.h_min());
}

inline Interval constant_C_p() { return 1.0 / constants::pi(); }

/// Smallest eigenvalue of -nu*Laplacian on (0,1); the lower endpoint feeds
/// the decay factors rho, rho_Omega so they are always over-estimated.
inline Interval lambda_min(const Interval& nu) { return nu * sqr(constants::pi()); }

// --- pointwise basis evaluation (plain doubles; used by diagnostics and
// tests, not by the rigorous assembly path) -------------------------------

/// Hat function at node i (0..n+1, boundary hats included).
inline double eval_phi(const SpatialMesh& mesh, int i, double x) {
    if (i < 0 || i > mesh.interior_nodes() + 1) throw DomainError("eval_phi: index");
    double xi = mesh.node(i);
    if (i > 0 && x <= xi) {
        double xl = mesh.node(i - 1);
        if (x < xl) return 0.0;
        return (x - xl) / (xi - xl);
    }
    if (i <= mesh.interior_nodes() && x >= xi) {
        double xr = mesh.node(i + 1);
        if (x > xr) return 0.0;
        return (xr - x) / (xr - xi);
    }
    return x == xi ? 1.0 : 0.0;
}

inline double eval_phi_dx(const SpatialMesh& mesh, int i, double x) {
    if (i < 0 || i > mesh.interior_nodes() + 1) throw DomainError("eval_phi_dx: index");
    double xi = mesh.node(i);
    if (i > 0 && x < xi && x > mesh.node(i - 1)) return 1.0 / (xi - mesh.node(i - 1));
    if (i <= mesh.interior_nodes() && x > xi && x < mesh.node(i + 1))
        return -1.0 / (mesh.node(i + 1) - xi);
    return 0.0;
}

/// Temporal hat at node j (1..m); vanishes at the left endpoint s_0 = 0.
inline double eval_psi(const TemporalMesh& mesh, int j, double t) {
    if (j < 1 || j > mesh.basis_size()) throw DomainError("eval_psi: index");
    double tj = mesh.node(j);
    if (t <= tj) {
        double tl = mesh.node(j - 1);
        if (t < tl) return 0.0;
        return (t - tl) / (tj - tl);
    }
    if (j < mesh.basis_size()) {
        double tr = mesh.node(j + 1);
        if (t > tr) return 0.0;
        return (tr - t) / (tr - tj);
    }
    return t == tj ? 1.0 : 0.0;
}

inline double eval_psi_dt(const TemporalMesh& mesh, int j, double t) {
    if (j < 1 || j > mesh.basis_size()) throw DomainError("eval_psi_dt: index");
    double tj = mesh.node(j);
    if (t < tj && t > mesh.node(j - 1)) return 1.0 / (tj - mesh.node(j - 1));
    if (j < mesh.basis_size() && t > tj && t < mesh.node(j + 1))
        return -1.0 / (mesh.node(j + 1) - tj);
    return 0.0;
}

} // namespace parasol
