#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "parasol/hermite.hpp"
#include "parasol/poly2.hpp"

namespace parasol {

/// Piecewise-polynomial approximate solution on one step interval:
/// quadratic in time per temporal element, C^1 Hermite in space.
///
/// Per spatial DOF a, the time profile on temporal element e is
///     q_a(tau) = A_a(e) + c1[a,e] tau + c2[a,e] tau^2,  tau in [0,1],
/// where the anchor A_a(e) is the *exact real* running sum
/// U0[a] + sum_{f<e} (c1[a,f] + c2[a,f]).  Storing the anchor implicitly
/// makes the represented function exactly continuous in time; rigorous
/// consumers read the anchors as interval enclosures of those sums.
class SpaceTimePoly {
  public:
    SpaceTimePoly(const HermiteSpace& space, const TemporalMesh& tmesh)
        : space_(&space), tmesh_(&tmesh) {
        std::size_t nd = std::size_t(space.ndof());
        std::size_t mt = std::size_t(tmesh.elements());
        U0.assign(nd, 0.0);
        c1.assign(nd * mt, 0.0);
        c2.assign(nd * mt, 0.0);
    }

    const HermiteSpace& space() const { return *space_; }
    const TemporalMesh& tmesh() const { return *tmesh_; }
    int ndof() const { return space_->ndof(); }
    int t_elements() const { return tmesh_->elements(); }

    std::vector<double> U0;  // DOF values at the start of the step
    std::vector<double> c1, c2;  // [dof * mt + e]

    double& c1_at(int a, int e) { return c1[std::size_t(a) * t_elements() + e]; }
    double& c2_at(int a, int e) { return c2[std::size_t(a) * t_elements() + e]; }
    double c1_at(int a, int e) const { return c1[std::size_t(a) * t_elements() + e]; }
    double c2_at(int a, int e) const { return c2[std::size_t(a) * t_elements() + e]; }

    /// Recompute interval anchors; call once after the coefficients are set.
    void finalize() {
        int mt = t_elements();
        anchors_.assign(std::size_t(ndof()) * (mt + 1), Interval(0.0));
        for (int a = 0; a < ndof(); ++a) {
            Interval acc(U0[std::size_t(a)]);
            anchor_ref(a, 0) = acc;
            for (int e = 0; e < mt; ++e) {
                acc += Interval(c1_at(a, e)) + Interval(c2_at(a, e));
                anchor_ref(a, e + 1) = acc;
            }
        }
    }

    const Interval& anchor(int a, int e) const {
        return anchors_[std::size_t(a) * (t_elements() + 1) + e];
    }

    /// Enclosure of the DOF vector at the end of the step.
    std::vector<Interval> end_dofs() const {
        std::vector<Interval> v(static_cast<std::size_t>(ndof()));
        for (int a = 0; a < ndof(); ++a) v[std::size_t(a)] = anchor(a, t_elements());
        return v;
    }

    std::vector<double> end_dofs_mid() const {
        std::vector<double> v(static_cast<std::size_t>(ndof()));
        for (int a = 0; a < ndof(); ++a) v[std::size_t(a)] = anchor(a, t_elements()).mid();
        return v;
    }

    /// Rigorous local polynomial of the cell (spatial element ex, temporal
    /// element et) in (xi, tau) in [0,1]^2.
    Poly2 cell_poly(int ex, int et) const {
        const HermiteShapes& sh = space_->shapes();
        Poly2 cell = Poly2::zero(sh.degree + 1, 3);
        for (const auto& d : space_->element_dofs(ex)) {
            if (d.global < 0) continue;
            Interval q0 = anchor(d.global, et);
            Interval q1(c1_at(d.global, et));
            Interval q2(c2_at(d.global, et));
            for (int k = 0; k <= sh.degree; ++k) {
                double cs = sh.coeff[std::size_t(d.shape)][std::size_t(k)];
                if (cs == 0.0) continue;
                Interval s = Interval(cs) * Interval(d.scale);
                cell.at(k, 0) += s * q0;
                cell.at(k, 1) += s * q1;
                cell.at(k, 2) += s * q2;
            }
        }
        return cell;
    }

    /// Spatial trace at the start (tau = 0 of element 0) or end of the step,
    /// as a rigorous per-element Poly1 in xi.
    Poly1 trace_poly(int ex, bool at_end) const {
        int et = at_end ? t_elements() - 1 : 0;
        Poly2 cell = cell_poly(ex, et);
        return trace_at_tau(cell, Interval(at_end ? 1.0 : 0.0));
    }

    /// Non-rigorous point evaluation (plots, diagnostics); t is step-local.
    double eval(double x, double t) const {
        int et = 0;
        while (et + 1 < t_elements() && t >= tmesh_->node(et + 1)) ++et;
        double wt = tmesh_->width(et);
        double tau = (t - tmesh_->node(et)) / wt;
        int ex = space_->locate(x);
        double wx = space_->mesh().width(ex);
        double xi = (x - space_->mesh().node(ex)) / wx;
        const HermiteShapes& sh = space_->shapes();
        double r = 0.0;
        for (const auto& d : space_->element_dofs(ex)) {
            if (d.global < 0) continue;
            double q = anchor(d.global, et).mid() + c1_at(d.global, et) * tau +
                       c2_at(d.global, et) * tau * tau;
            r += q * d.scale * sh.eval(d.shape, xi);
        }
        return r;
    }

    /// Non-rigorous spatial derivative at (x, t), step-local time.
    double eval_dx(double x, double t) const {
        int et = 0;
        while (et + 1 < t_elements() && t >= tmesh_->node(et + 1)) ++et;
        double wt = tmesh_->width(et);
        double tau = (t - tmesh_->node(et)) / wt;
        int ex = space_->locate(x);
        double wx = space_->mesh().width(ex);
        double xi = (x - space_->mesh().node(ex)) / wx;
        const HermiteShapes& sh = space_->shapes();
        double r = 0.0;
        for (const auto& d : space_->element_dofs(ex)) {
            if (d.global < 0) continue;
            double q = anchor(d.global, et).mid() + c1_at(d.global, et) * tau +
                       c2_at(d.global, et) * tau * tau;
            r += q * d.scale * sh.eval_d(d.shape, xi) / wx;
        }
        return r;
    }

    /// Documented debug dump: cell index then the coefficient grid of the
    /// cell polynomial, row-major in the xi power.
    void write_cells_csv(const std::string& path) const {
        std::ofstream out(path);
        out.precision(17);
        int nxc = space_->px() + 1;
        out << "ex,et";
        for (int p = 0; p < nxc; ++p)
            for (int q = 0; q < 3; ++q) out << ",c" << p << q;
        out << '\n';
        for (int ex = 0; ex < space_->mesh().elements(); ++ex)
            for (int et = 0; et < t_elements(); ++et) {
                Poly2 cp = cell_poly(ex, et);
                out << ex << ',' << et;
                for (int p = 0; p < nxc; ++p)
                    for (int q = 0; q < 3; ++q) out << ',' << cp.at(p, q).mid();
                out << '\n';
            }
    }

  private:
    Interval& anchor_ref(int a, int e) {
        return anchors_[std::size_t(a) * (t_elements() + 1) + e];
    }

    const HermiteSpace* space_;
    const TemporalMesh* tmesh_;
    std::vector<Interval> anchors_;
};

} // namespace parasol
