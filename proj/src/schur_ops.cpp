#include "schurlab/schur_ops.hpp"

#include <algorithm>
#include <cmath>

#include "schurlab/error.hpp"

namespace schurlab {

Mat schur_product(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw Error(ErrorKind::ShapeMismatch, "Schur product of different shapes");
    Mat z(x.rows(), x.cols());
    auto zd = z.data();
    auto xd = x.data();
    auto yd = y.data();
    for (std::size_t k = 0; k < zd.size(); ++k) zd[k] = xd[k] * yd[k];
    return z;
}

double column_norm(const Mat& x) {
    double best = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) s += std::norm(x(i, j));
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

double factorization_upper_bound(const Mat& l, const Mat& r) {
    if (l.rows() != r.rows())
        throw Error(ErrorKind::RowCountMismatch, "L and R must have the same number of rows");
    return column_norm(l) * column_norm(r);
}

double positive_multiplier_norm(const Mat& x, double tol) {
    const PsdCheck chk = psd_check(x, tol);
    if (!chk.is_psd) throw Error(ErrorKind::NotPSD, "positive_multiplier_norm needs a PSD matrix");
    double best = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) best = std::max(best, x(i, i).real());
    return best;
}

double entry_lower_bound(const Mat& x) { return max_abs(x); }

bool rank_one_extremal_check(const Mat& x, double tol, double rel_tol) {
    if (x.empty() || rank_of(x, rel_tol) != 1) return false;
    return std::all_of(x.data().begin(), x.data().end(),
                       [&](const cplx& z) { return std::abs(std::abs(z) - 1.0) <= tol; });
}

NormBounds cheap_bounds(const Mat& x, double tol) {
    NormBounds b;
    b.lower = entry_lower_bound(x);
    if (x.is_square() && psd_check(x, tol).is_psd) {
        b.upper = positive_multiplier_norm(x, tol);
        b.lower = std::max(b.lower, b.upper);
        b.method_notes = "positive: max diagonal";
        return b;
    }
    // X = I* X and X = (X*)* I
    const double col = column_norm(x);
    const double row = column_norm(x.adjoint());
    b.upper = std::min(col, row);
    b.method_notes = "entry bound / trivial factorizations";
    return b;
}

}  // namespace schurlab
