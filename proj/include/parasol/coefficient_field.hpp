#pragma once

#include <vector>

#include "parasol/mesh.hpp"
#include "parasol/poly2.hpp"

namespace parasol {

/// Piecewise-polynomial function of (x,t) on the mesh product, stored per
/// space-time cell in local coordinates together with a range enclosure.
/// Used for the linearization coefficients c_i and d_i.
class CoefficientField {
  public:
    CoefficientField(const SpatialMesh& sm, const TemporalMesh& tm)
        : sm_(&sm), tm_(&tm), cells_(std::size_t(sm.elements()) * tm.elements()),
          ranges_(cells_.size(), Interval(0.0)) {}

    const SpatialMesh& smesh() const { return *sm_; }
    const TemporalMesh& tmesh() const { return *tm_; }

    void set_cell(int ex, int et, Poly2 p) {
        std::size_t idx = index(ex, et);
        ranges_[idx] = range_bound01(p);
        cells_[idx] = std::move(p);
    }

    const Poly2& cell(int ex, int et) const { return cells_[index(ex, et)]; }
    const Interval& cell_range(int ex, int et) const { return ranges_[index(ex, et)]; }

    int max_degree_x() const {
        int d = 0;
        for (const auto& c : cells_) d = std::max(d, c.nx - 1);
        return d;
    }
    int max_degree_t() const {
        int d = 0;
        for (const auto& c : cells_) d = std::max(d, c.nt - 1);
        return d;
    }

    bool is_zero() const {
        for (const auto& r : ranges_)
            if (r.lo() != 0 || r.hi() != 0) return false;
        return true;
    }

  private:
    std::size_t index(int ex, int et) const {
        return std::size_t(et) * sm_->elements() + ex;
    }

    const SpatialMesh* sm_;
    const TemporalMesh* tm_;
    std::vector<Poly2> cells_;
    std::vector<Interval> ranges_;
};

inline CoefficientField constant_field(const SpatialMesh& sm, const TemporalMesh& tm,
                                       const Interval& value) {
    CoefficientField f(sm, tm);
    for (int ex = 0; ex < sm.elements(); ++ex)
        for (int et = 0; et < tm.elements(); ++et) f.set_cell(ex, et, Poly2::constant(value));
    return f;
}

/// Verified upper bound of the essential sup norm over Omega x J (and a
/// trivial lower bound from the per-cell ranges).
inline Interval coefficient_bounds(const CoefficientField& c) {
    double ub = 0.0, lb = 0.0;
    for (int ex = 0; ex < c.smesh().elements(); ++ex)
        for (int et = 0; et < c.tmesh().elements(); ++et) {
            const Interval& r = c.cell_range(ex, et);
            ub = std::max(ub, mag(r));
            lb = std::max(lb, mig(r));
        }
    return {lb, ub};
}

} // namespace parasol
