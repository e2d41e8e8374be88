#pragma once

#include <Eigen/Dense>
#include <fstream>
#include <string>
#include <vector>

#include "parasol/interval.hpp"

namespace parasol {

/// Dense matrix of intervals.  If symmetry_hint is set, entry(i,j) and
/// entry(j,i) are identical intervals (enforced by make_symmetric()).
class IMatrix {
  public:
    IMatrix() : rows_(0), cols_(0) {}
    IMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static IMatrix identity(int n) {
        IMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Interval(1.0);
        m.symmetry_hint = true;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Interval& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const Interval& operator()(int i, int j) const {
        return data_[std::size_t(i) * cols_ + j];
    }

    /// Entrywise hull with the transpose; sound whenever the enclosed exact
    /// matrix is symmetric.
    void make_symmetric() {
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j) {
                Interval h = hull((*this)(i, j), (*this)(j, i));
                (*this)(i, j) = h;
                (*this)(j, i) = h;
            }
        symmetry_hint = true;
    }

    bool symmetry_hint = false;

  private:
    int rows_, cols_;
    std::vector<Interval> data_;
};

inline IMatrix operator+(const IMatrix& a, const IMatrix& b) {
    IMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    r.symmetry_hint = a.symmetry_hint && b.symmetry_hint;
    return r;
}

inline IMatrix operator-(const IMatrix& a, const IMatrix& b) {
    IMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    r.symmetry_hint = a.symmetry_hint && b.symmetry_hint;
    return r;
}

inline IMatrix operator*(const Interval& s, const IMatrix& a) {
    IMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    r.symmetry_hint = a.symmetry_hint;
    return r;
}

using Mat = Eigen::MatrixXd;

/// Midpoint/radius split with rigorous radii: for every member X of A,
/// |X - mid| <= rad entrywise.
inline void split_mid_rad(const IMatrix& a, Mat& mid, Mat& rad) {
    mid.resize(a.rows(), a.cols());
    rad.resize(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            mid(i, j) = a(i, j).mid();
            rad(i, j) = a(i, j).rad();
        }
}

inline IMatrix join_mid_rad(const Mat& mid, const Mat& rad) {
    IMatrix r(int(mid.rows()), int(mid.cols()));
    for (int i = 0; i < mid.rows(); ++i)
        for (int j = 0; j < mid.cols(); ++j)
            r(i, j) = Interval(rnd::sub_down(mid(i, j), rad(i, j)),
                               rnd::add_up(mid(i, j), rad(i, j)));
    return r;
}

namespace detail {

// gamma_n = n*u/(1-n*u), the classical dot-product rounding constant.
inline double gamma_fp(std::int64_t n) {
    double u = 0x1p-53;
    double nu = rnd::mul_up(static_cast<double>(n), u);
    return rnd::div_up(nu, rnd::sub_down(1.0, nu));
}

// Entrywise inflation turning a nearest-rounded nonnegative expression of
// at most `terms` accumulated operations into an upper bound.
inline void inflate_up(Mat& x, std::int64_t terms, double abs_guard) {
    double f = rnd::add_up(1.0, gamma_fp(terms + 2));
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            x(i, j) = rnd::add_up(rnd::mul_up(x(i, j), f), abs_guard);
}

inline double underflow_guard(int n) {
    return static_cast<double>(n) * 0x1p-1000;
}

} // namespace detail

/// Rigorous product of interval matrices via four floating products
/// (Rump's midpoint-radius scheme).  The midpoint product is evaluated in
/// plain floating point and covered by the gamma_n dot-product bound, which
/// holds for any summation order, so a blocked BLAS kernel is fine.
inline IMatrix imatmul(const IMatrix& a, const IMatrix& b) {
    const int n = a.cols();
    Mat am, ar, bm, br;
    split_mid_rad(a, am, ar);
    split_mid_rad(b, bm, br);

    Mat cm = am * bm;
    Mat absA = am.cwiseAbs();
    Mat absB = bm.cwiseAbs();
    // |A*B - cm| <= |Am|(Br + g|Bm|) + Ar(|Bm| + Br) entrywise, g = gamma.
    double g = detail::gamma_fp(n + 2);
    Mat rhs = br + g * absB;
    Mat cr = absA * rhs + ar * (absB + br);
    detail::inflate_up(cr, 2 * std::int64_t(n) + 8, detail::underflow_guard(n));
    return join_mid_rad(cm, cr);
}

/// Product point-matrix * interval-matrix without materializing a split.
inline IMatrix imatmul(const Mat& a, const IMatrix& b) {
    const int n = int(a.cols());
    Mat bm, br;
    split_mid_rad(b, bm, br);
    Mat cm = a * bm;
    double g = detail::gamma_fp(n + 2);
    Mat cr = a.cwiseAbs() * (br + g * bm.cwiseAbs());
    detail::inflate_up(cr, 2 * std::int64_t(n) + 8, detail::underflow_guard(n));
    return join_mid_rad(cm, cr);
}

inline IMatrix imatmul(const IMatrix& a, const Mat& b) {
    const int n = a.cols();
    Mat am, ar;
    split_mid_rad(a, am, ar);
    Mat cm = am * b;
    double g = detail::gamma_fp(n + 2);
    Mat absB = b.cwiseAbs();
    Mat cr = am.cwiseAbs() * (g * absB) + ar * absB;
    detail::inflate_up(cr, 2 * std::int64_t(n) + 8, detail::underflow_guard(n));
    return join_mid_rad(cm, cr);
}

/// Rigorous enclosure of the product of two point matrices.
inline IMatrix imatmul(const Mat& a, const Mat& b) {
    const int n = int(a.cols());
    Mat cm = a * b;
    double g = detail::gamma_fp(n + 2);
    Mat cr = a.cwiseAbs() * (g * b.cwiseAbs());
    detail::inflate_up(cr, 2 * std::int64_t(n) + 8, detail::underflow_guard(n));
    return join_mid_rad(cm, cr);
}

/// Upper bounds of the induced 1- and inf-norms over all members.
inline double norm1_up(const IMatrix& a) {
    double best = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < a.rows(); ++i) s = rnd::add_up(s, mag(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

inline double norminf_up(const IMatrix& a) {
    double best = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s = rnd::add_up(s, mag(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

/// ||X||_2 <= sqrt(||X||_1 ||X||_inf) for every member.
inline double norm2_up(const IMatrix& a) {
    return rnd::sqrt_up(rnd::mul_up(norm1_up(a), norminf_up(a)));
}

inline double norm1_up(const Mat& a) {
    double best = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < a.rows(); ++i) s = rnd::add_up(s, std::fabs(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

inline double norminf_up(const Mat& a) {
    double best = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s = rnd::add_up(s, std::fabs(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

inline double norm2_up(const Mat& a) {
    return rnd::sqrt_up(rnd::mul_up(norm1_up(a), norminf_up(a)));
}

/// Debug dump: one line per entry with midpoint and radius.
inline void write_csv(const IMatrix& a, const std::string& path) {
    std::ofstream out(path);
    out << "i,j,mid,rad\n";
    out.precision(17);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out << i << ',' << j << ',' << a(i, j).mid() << ',' << a(i, j).rad() << '\n';
}

} // namespace parasol
