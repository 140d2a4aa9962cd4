#include "schurlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "schurlab/error.hpp"

namespace schurlab {

namespace {

constexpr int kMaxSweeps = 80;

// Rotation parameters that annihilate the off-diagonal of the 2x2 Hermitian
// block [[app, g], [conj(g), aqq]]. The rotation is J = [[c, s e], [-s conj(e), c]]
// with e = g/|g|; J* B J is diagonal with entries app - t|g|, aqq + t|g|.
struct Rotation {
    double c;
    double s;
    double t;
    cplx e;
};

Rotation jacobi_rotation(double app, double aqq, cplx g) {
    const double ag = std::abs(g);
    const double theta = (aqq - app) / (2.0 * ag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    return {c, t * c, t, g / ag};
}

// Columns p, q of m  <-  [m_p, m_q] * J
void rotate_columns(Mat& m, std::size_t p, std::size_t q, const Rotation& r) {
    const cplx se = r.s * r.e;
    const cplx sec = r.s * std::conj(r.e);
    for (std::size_t k = 0; k < m.rows(); ++k) {
        const cplx mp = m(k, p);
        const cplx mq = m(k, q);
        m(k, p) = r.c * mp - sec * mq;
        m(k, q) = se * mp + r.c * mq;
    }
}

// Rows p, q of m  <-  J* [m_p; m_q]
void rotate_rows(Mat& m, std::size_t p, std::size_t q, const Rotation& r) {
    const cplx se = r.s * r.e;
    const cplx sec = r.s * std::conj(r.e);
    for (std::size_t k = 0; k < m.cols(); ++k) {
        const cplx mp = m(p, k);
        const cplx mq = m(q, k);
        m(p, k) = r.c * mp - se * mq;
        m(q, k) = sec * mp + r.c * mq;
    }
}

double off_diagonal_sq(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
    return s;
}

}  // namespace

HermEig herm_eig(const Mat& h, double tol) {
    if (!h.is_square()) throw Error(ErrorKind::NotSquare, "herm_eig needs a square matrix");
    const std::size_t n = h.rows();
    const double scale = std::max(1.0, frobenius_norm(h));
    if (hermitian_defect(h) > tol * scale)
        throw Error(ErrorKind::NotHermitian, "asymmetry exceeds tolerance");

    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    Mat v = Mat::identity(n);

    const double stop = std::pow(1e-17 * std::max(frobenius_norm(a), 1e-300), 2);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_sq(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                if (std::abs(g) == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Rotation r = jacobi_rotation(app, aqq, g);
                rotate_columns(a, p, q, r);
                rotate_rows(a, p, q, r);
                const double ag = std::abs(g);
                a(p, p) = app - r.t * ag;
                a(q, q) = aqq + r.t * ag;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                rotate_columns(v, p, q, r);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    HermEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

Svd svd(const Mat& a) {
    const std::size_t n = a.cols();
    Mat g = a;
    Mat v = Mat::identity(n);
    std::vector<double> sq(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.rows(); ++i) s += std::norm(g(i, j));
        sq[j] = s;
    }

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx gamma{};
                for (std::size_t i = 0; i < g.rows(); ++i) gamma += std::conj(g(i, p)) * g(i, q);
                const double ag = std::abs(gamma);
                if (ag == 0.0 || ag <= 1e-15 * std::sqrt(sq[p] * sq[q])) continue;
                rotated = true;
                const Rotation r = jacobi_rotation(sq[p], sq[q], gamma);
                rotate_columns(g, p, q, r);
                rotate_columns(v, p, q, r);
                // recompute rather than update to keep the column norms honest
                double sp = 0.0, sqq = 0.0;
                for (std::size_t i = 0; i < g.rows(); ++i) {
                    sp += std::norm(g(i, p));
                    sqq += std::norm(g(i, q));
                }
                sq[p] = sp;
                sq[q] = sqq;
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sq[x] > sq[y]; });

    Svd out;
    out.sigma.resize(n);
    out.V = Mat(n, n);
    std::size_t positive = 0;
    for (std::size_t k = 0; k < n; ++k) {
        out.sigma[k] = std::sqrt(sq[order[k]]);
        if (out.sigma[k] > 0.0) ++positive;
        for (std::size_t i = 0; i < n; ++i) out.V(i, k) = v(i, order[k]);
    }
    // a has at most rows() nonzero singular values; keep U thin
    positive = std::min(positive, a.rows());
    out.U = Mat(a.rows(), positive);
    for (std::size_t k = 0; k < positive; ++k) {
        const double s = out.sigma[k];
        for (std::size_t i = 0; i < a.rows(); ++i) out.U(i, k) = g(i, order[k]) / s;
    }
    return out;
}

double op_norm(const Mat& a) {
    if (a.empty()) return 0.0;
    // one-sided Jacobi on the narrower side
    const Svd s = a.cols() <= a.rows() ? svd(a) : svd(a.adjoint());
    return s.sigma.empty() ? 0.0 : s.sigma.front();
}

std::size_t rank_of(const Mat& x, double rel_tol) {
    if (x.empty()) return 0;
    const Svd s = x.cols() <= x.rows() ? svd(x) : svd(x.adjoint());
    if (s.sigma.empty() || s.sigma.front() == 0.0) return 0;
    const double cut = rel_tol * s.sigma.front();
    return static_cast<std::size_t>(
        std::count_if(s.sigma.begin(), s.sigma.end(), [&](double v) { return v > cut; }));
}

SpanBasis span_basis(const Mat& columns, double rel_tol) {
    if (columns.cols() == 0) throw Error(ErrorKind::EmptyInput, "span of an empty vector list");
    const Svd s = svd(columns);
    SpanBasis out;
    out.singular_values = s.sigma;
    const double top = s.sigma.empty() ? 0.0 : s.sigma.front();
    out.tol_used = rel_tol * top;
    std::size_t r = 0;
    if (top > 0.0)
        while (r < s.sigma.size() && r < s.U.cols() && s.sigma[r] > out.tol_used) ++r;
    out.rank = r;
    out.basis = s.U.col_block(0, r);
    return out;
}

SpanBasis span_basis(std::span<const Vec> vectors, double rel_tol) {
    if (vectors.empty()) throw Error(ErrorKind::EmptyInput, "span of an empty vector list");
    return span_basis(Mat::from_columns(vectors), rel_tol);
}

PsdCheck psd_check(const Mat& x, double tol) {
    if (!x.is_square()) throw Error(ErrorKind::NotSquare, "psd_check needs a square matrix");
    const double scale = std::max(1.0, frobenius_norm(x));
    if (hermitian_defect(x) > tol * scale) {
        // not Hermitian: report the Hermitian part's spectrum but refuse
        Mat hp = 0.5 * (x + x.adjoint());
        const HermEig e = herm_eig(hp, tol);
        return {false, e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front()};
    }
    const HermEig e = herm_eig(x, tol);
    const double lo = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
    return {lo >= -tol * scale, lo};
}

Mat psd_sqrt(const Mat& x, double tol, double rel_tol) {
    if (!x.is_square()) throw Error(ErrorKind::NotSquare, "psd_sqrt needs a square matrix");
    const double scale = std::max(1.0, frobenius_norm(x));
    if (hermitian_defect(x) > tol * scale)
        throw Error(ErrorKind::NotPSD, "input is not Hermitian within tolerance");
    const HermEig e = herm_eig(x, tol);
    const std::size_t n = x.rows();
    if (n == 0) return {};
    if (e.eigenvalues.front() < -tol * scale)
        throw Error(ErrorKind::NotPSD, "eigenvalue below -tol");
    const double cut = rel_tol * std::max(0.0, e.eigenvalues.back());
    std::vector<double> root(n);
    for (std::size_t k = 0; k < n; ++k)
        root[k] = e.eigenvalues[k] > cut ? std::sqrt(e.eigenvalues[k]) : 0.0;

    Mat f(n, n);
    const Mat& v = e.eigenvectors;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k)
                if (root[k] != 0.0) s += v(i, k) * root[k] * std::conj(v(j, k));
            f(i, j) = s;
            f(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < n; ++i) f(i, i) = f(i, i).real();
    return f;
}

Polar polar(const Mat& a, double rel_tol) {
    const Svd s = svd(a);
    const std::size_t n = a.cols();
    const double top = s.sigma.empty() ? 0.0 : s.sigma.front();
    std::size_t r = 0;
    if (top > 0.0)
        while (r < s.U.cols() && s.sigma[r] > rel_tol * top) ++r;

    Polar out;
    out.W = Mat(a.rows(), n);
    out.F = Mat(n, n);
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) out.W(i, j) += s.U(i, k) * std::conj(s.V(j, k));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out.F(i, j) += s.V(i, k) * s.sigma[k] * std::conj(s.V(j, k));
    }
    return out;
}

Mat projector(const Mat& q) { return q * q.adjoint(); }

}  // namespace schurlab
