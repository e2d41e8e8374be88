#pragma once

#include <array>
#include <vector>

#include "parasol/mesh.hpp"

// C^1 Hermite finite element space on a spatial mesh, cubic (value +
// derivative per node) or quintic (+ second derivative per node).  Shape
// functions live on the reference element xi in [0,1] and
// have exact binary coefficients; derivative-type degrees of freedom are
// scaled by powers of the (exactly representable) element width so that the
// assembled field is C^1 across element boundaries as a real function.

namespace parasol {

/// Reference shape functions, highest degree first fixed at 5.
/// Per end q in {0,1}: value, slope, and (quintic only) curvature shapes.
struct HermiteShapes {
    // coeff[s][k]: coefficient of xi^k for shape s; order:
    //   v0, d0, (s0,) v1, d1, (s1)
    std::vector<std::array<double, 6>> coeff;
    int degree;

    static HermiteShapes make(int px) {
        HermiteShapes sh;
        sh.degree = px;
        if (px == 3) {
            sh.coeff = {
                {1, 0, -3, 2, 0, 0},  // value at left
                {0, 1, -2, 1, 0, 0},  // slope at left
                {0, 0, 3, -2, 0, 0},  // value at right
                {0, 0, -1, 1, 0, 0},  // slope at right
            };
        } else if (px == 5) {
            sh.coeff = {
                {1, 0, 0, -10, 15, -6},     // value at left
                {0, 1, 0, -6, 8, -3},       // slope at left
                {0, 0, 0.5, -1.5, 1.5, -0.5}, // curvature at left
                {0, 0, 0, 10, -15, 6},      // value at right
                {0, 0, 0, -4, 7, -3},       // slope at right
                {0, 0, 0, 0.5, -1, 0.5},    // curvature at right
            };
        } else {
            throw DomainError("HermiteShapes: spatial degree must be 3 or 5");
        }
        return sh;
    }

    int per_node() const { return degree == 3 ? 2 : 3; }

    double eval(int s, double xi) const {
        double r = 0.0;
        for (int k = degree; k >= 0; --k) r = r * xi + coeff[std::size_t(s)][std::size_t(k)];
        return r;
    }
    double eval_d(int s, double xi) const {
        double r = 0.0;
        for (int k = degree; k >= 1; --k)
            r = r * xi + k * coeff[std::size_t(s)][std::size_t(k)];
        return r;
    }
    double eval_dd(int s, double xi) const {
        double r = 0.0;
        for (int k = degree; k >= 2; --k)
            r = r * xi + k * (k - 1) * coeff[std::size_t(s)][std::size_t(k)];
        return r;
    }
};

/// Global DOF numbering with the homogeneous Dirichlet condition built in:
/// boundary nodes carry no value DOF.
class HermiteSpace {
  public:
    HermiteSpace(const SpatialMesh& mesh, int px)
        : mesh_(&mesh), shapes_(HermiteShapes::make(px)) {
        int nn = mesh.interior_nodes() + 2;
        vidx_.assign(std::size_t(nn), -1);
        didx_.assign(std::size_t(nn), -1);
        sidx_.assign(std::size_t(nn), -1);
        int next = 0;
        for (int q = 0; q < nn; ++q) {
            bool interior = q > 0 && q < nn - 1;
            if (interior) vidx_[std::size_t(q)] = next++;
            didx_[std::size_t(q)] = next++;
            if (px == 5) sidx_[std::size_t(q)] = next++;
        }
        ndof_ = next;
    }

    const SpatialMesh& mesh() const { return *mesh_; }
    const HermiteShapes& shapes() const { return shapes_; }
    int px() const { return shapes_.degree; }
    int ndof() const { return ndof_; }
    int value_index(int node) const { return vidx_[std::size_t(node)]; }
    int slope_index(int node) const { return didx_[std::size_t(node)]; }
    int curv_index(int node) const { return sidx_[std::size_t(node)]; }

    /// Local DOF table of element e: global index and the width-power
    /// scaling of the shape (w^0 value, w^1 slope, w^2 curvature).
    struct LocalDof {
        int shape;   // row into HermiteShapes::coeff
        int global;  // -1 for a constrained boundary value
        double scale;
    };

    std::vector<LocalDof> element_dofs(int e) const {
        double w = mesh_->width(e);
        double w2 = w * w;
        std::vector<LocalDof> out;
        int pn = shapes_.per_node();
        for (int side = 0; side < 2; ++side) {
            int node = e + side;
            int base = side * pn;
            out.push_back({base + 0, value_index(node), 1.0});
            out.push_back({base + 1, slope_index(node), w});
            if (px() == 5) out.push_back({base + 2, curv_index(node), w2});
        }
        return out;
    }

    /// Interpolate a smooth function given value/derivative callbacks.
    template <class F, class Fd, class Fdd>
    std::vector<double> interpolate(F&& f, Fd&& fd, Fdd&& fdd) const {
        std::vector<double> u(std::size_t(ndof_), 0.0);
        int nn = mesh_->interior_nodes() + 2;
        for (int q = 0; q < nn; ++q) {
            double x = mesh_->node(q);
            if (value_index(q) >= 0) u[std::size_t(value_index(q))] = f(x);
            u[std::size_t(slope_index(q))] = fd(x);
            if (px() == 5) u[std::size_t(curv_index(q))] = fdd(x);
        }
        return u;
    }

    /// Field value at x from a coefficient vector (plain double path).
    double eval(const std::vector<double>& u, double x) const {
        int e = locate(x);
        double w = mesh_->width(e);
        double xi = (x - mesh_->node(e)) / w;
        double r = 0.0;
        for (const auto& d : element_dofs(e))
            if (d.global >= 0) r += u[std::size_t(d.global)] * d.scale * shapes_.eval(d.shape, xi);
        return r;
    }

    int locate(double x) const {
        int lo = 0, hi = mesh_->elements() - 1;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (x >= mesh_->node(mid)) lo = mid;
            else hi = mid - 1;
        }
        return lo;
    }

  private:
    const SpatialMesh* mesh_;
    HermiteShapes shapes_;
    std::vector<int> vidx_, didx_, sidx_;
    int ndof_ = 0;
};

} // namespace parasol
