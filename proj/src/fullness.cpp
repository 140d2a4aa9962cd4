#include "schurlab/fullness.hpp"

#include <cmath>

#include "schurlab/error.hpp"

namespace schurlab {

std::vector<double> hermitian_vectorize(const Mat& m) {
    const std::size_t r = m.rows();
    std::vector<double> v;
    v.reserve(r * r);
    for (std::size_t i = 0; i < r; ++i) v.push_back(m(i, i).real());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            v.push_back(M_SQRT2 * m(i, j).real());
            v.push_back(M_SQRT2 * m(i, j).imag());
        }
    return v;
}

Mat hermitian_devectorize(std::span<const double> v, std::size_t r) {
    if (v.size() != r * r) throw Error(ErrorKind::DimensionMismatch, "vectorization length is not r^2");
    Mat m(r, r);
    std::size_t k = 0;
    for (std::size_t i = 0; i < r; ++i) m(i, i) = v[k++];
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            const cplx z{v[k] * M_SQRT1_2, v[k + 1] * M_SQRT1_2};
            k += 2;
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    return m;
}

FullnessResult fullness_test(const Mat& columns, double rel_tol) {
    if (columns.cols() == 0) throw Error(ErrorKind::EmptyInput, "fullness of an empty set");
    FullnessResult out;
    const SpanBasis sb = span_basis(columns, rel_tol);
    const std::size_t r = sb.rank;
    out.basis = sb.basis;
    out.span_rank = r;
    out.required_rank = r * r;
    if (r == 0) {
        out.is_full = true;
        out.margin = 1.0;
        return out;
    }

    // row j: coordinates of eta_j eta_j*
    const Mat eta = sb.basis.adjoint() * columns;
    const std::size_t n = columns.cols();
    const std::size_t dim = r * r;
    Mat a(n, dim);
    for (std::size_t j = 0; j < n; ++j) {
        Mat outer(r, r);
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q) outer(p, q) = eta(p, j) * std::conj(eta(q, j));
        const std::vector<double> row = hermitian_vectorize(outer);
        for (std::size_t c = 0; c < dim; ++c) a(j, c) = row[c];
    }

    const Svd s = svd(a);
    out.singular_values = s.sigma;
    const double top = s.sigma.front();
    std::size_t achieved = 0;
    if (top > 0.0)
        while (achieved < dim && s.sigma[achieved] > rel_tol * top) ++achieved;
    out.achieved_rank = achieved;
    out.is_full = achieved == dim;
    out.margin = achieved > 0 ? s.sigma[achieved - 1] / top : 0.0;
    if (out.is_full) return out;

    std::size_t pick = achieved;
    for (std::size_t k = achieved; k < dim; ++k) {
        std::vector<double> b(dim);
        for (std::size_t c = 0; c < dim; ++c) b[c] = s.V(c, k).real();
        Mat w = sb.basis * hermitian_devectorize(b, r) * sb.basis.adjoint();
        const double nrm = op_norm(w);
        if (nrm > 0.0) w *= 1.0 / nrm;
        out.complement.push_back(std::move(w));
        if (s.sigma[k] < s.sigma[pick]) pick = k;
    }
    out.witness = out.complement[pick - achieved];
    return out;
}

FullnessResult fullness_test(std::span<const Vec> vectors, double rel_tol) {
    if (vectors.empty()) throw Error(ErrorKind::EmptyInput, "fullness of an empty set");
    return fullness_test(Mat::from_columns(vectors), rel_tol);
}

bool square_dim_bound_check(const FullnessResult& result, std::size_t n) {
    return !result.is_full || result.span_rank * result.span_rank <= n;
}

std::pair<FullnessResult, FullnessResult> transport_fullness(std::span<const Vec> vectors,
                                                             const Mat& t, double rel_tol) {
    if (vectors.empty()) throw Error(ErrorKind::EmptyInput, "fullness of an empty set");
    const Mat cols = Mat::from_columns(vectors);
    if (t.cols() != cols.rows())
        throw Error(ErrorKind::DimensionMismatch, "T does not act on the vectors' space");
    const SpanBasis sb = span_basis(cols, rel_tol);
    if (sb.rank > 0 && rank_of(t * sb.basis, rel_tol) != sb.rank)
        throw Error(ErrorKind::NotInjectiveOnSpan, "T is not injective on the span");
    return {fullness_test(cols, rel_tol), fullness_test(t * cols, rel_tol)};
}

WitnessDefects witness_defects(const Mat& b, std::span<const Vec> vectors, const Mat& basis) {
    WitnessDefects d;
    d.asymmetry = hermitian_defect(b);
    d.norm_error = std::abs(op_norm(b) - 1.0);
    const Mat p = projector(basis);
    d.support_error = frobenius_norm(b - p * b * p);
    for (const auto& xi : vectors) d.max_state = std::max(d.max_state, std::abs(dot(xi, b * xi)));
    return d;
}

}  // namespace schurlab
