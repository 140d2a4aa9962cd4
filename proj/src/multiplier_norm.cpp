#include "schurlab/multiplier_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "schurlab/error.hpp"
#include "schurlab/random.hpp"
#include "schurlab/schur_ops.hpp"

namespace schurlab {

namespace {

double residual_of(const Mat& l, const Mat& r, const Mat& x) {
    return frobenius_norm(x - l.adjoint() * r);
}

Mat gram_block(const SchurFactorization& f) {
    const Mat c = hstack(f.L, f.R);
    return c.adjoint() * c;
}

// Projection onto {off-diagonal blocks equal to X, real diagonal capped at t}.
void project_affine(Mat& m, const Mat& x, double t) {
    const std::size_t rows = x.rows();
    const std::size_t cols = x.cols();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, rows + j) = x(i, j);
            m(rows + j, i) = std::conj(x(i, j));
        }
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = std::min(m(i, i).real(), t);
}

Mat project_psd(const HermEig& e) {
    const std::size_t n = e.eigenvalues.size();
    const Mat& v = e.eigenvectors;
    Mat m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = e.eigenvalues[k];
        if (lam <= 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = v(i, k) * lam;
            for (std::size_t j = i; j < n; ++j) m(i, j) += vik * std::conj(v(j, k));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
    }
    return m;
}

double shifted_value(const Mat& m, std::size_t rows, double shift) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double d = m(i, i).real() + shift;
        (i < rows ? a : b) = std::max(i < rows ? a : b, d);
    }
    return std::sqrt(std::max(a, 0.0) * std::max(b, 0.0));
}

struct FeasibilityOutcome {
    bool feasible = false;
    bool have_certificate = false;
    SchurFactorization certificate;
    Mat last;
    int sweeps = 0;
};

// Alternating projections between the PSD cone and the affine/box set at level t.
FeasibilityOutcome feasibility(const Mat& x, double t, Mat m, const NormOptions& opts) {
    const std::size_t rows = x.rows();
    FeasibilityOutcome out;
    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(opts.max_sweeps));
    double best_value = std::numeric_limits<double>::infinity();
    Mat best_block;
    const double scale = std::max(1.0, t);

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        project_affine(m, x, t);
        const HermEig e = herm_eig(m, 1e-6);
        const double lam = e.eigenvalues.front();
        const double shift = std::max(0.0, -lam);
        const double value = shifted_value(m, rows, shift);
        if (value < best_value) {
            best_value = value;
            best_block = m;
            for (std::size_t i = 0; i < best_block.rows(); ++i) best_block(i, i) += shift;
        }
        out.sweeps = sweep + 1;
        history.push_back(shift);
        if (shift <= opts.feasibility_tol * scale) {
            out.feasible = true;
            break;
        }
        const auto w = static_cast<std::size_t>(opts.stall_window);
        if (history.size() > w) {
            const double before = history[history.size() - 1 - w];
            if (before - shift < opts.stall_decrease * before) break;
        }
        m = project_psd(e);
    }
    out.last = m;
    if (!best_block.empty()) {
        try {
            SchurFactorization f = extract_factorization(best_block, rows, best_value, 1e-6);
            f = correct_residual(std::move(f), x);
            out.certificate = std::move(f);
            out.have_certificate = true;
        } catch (const Error&) {
            // shifted block failed the PSD check by roundoff; no certificate this step
        }
    }
    return out;
}

cplx unit_phase(const cplx& z) {
    const double a = std::abs(z);
    return a > 0.0 ? z / a : cplx{1.0, 0.0};
}

}  // namespace

SchurFactorization make_factorization(Mat l, Mat r, const Mat& x) {
    SchurFactorization f;
    f.value = factorization_upper_bound(l, r);
    f.residual = residual_of(l, r, x);
    f.L = std::move(l);
    f.R = std::move(r);
    return f;
}

SchurFactorization balance(SchurFactorization f) {
    const double a = column_norm(f.L);
    const double b = column_norm(f.R);
    if (a > 0.0 && b > 0.0) {
        const double c = std::sqrt(b / a);
        f.L *= c;
        f.R *= 1.0 / c;
        f.value = column_norm(f.L) * column_norm(f.R);
    }
    return f;
}

SchurFactorization correct_residual(SchurFactorization f, const Mat& x) {
    const Mat e = x - f.L.adjoint() * f.R;
    if (frobenius_norm(e) == 0.0) {
        f.residual = 0.0;
        return f;
    }
    const Svd s = svd(e);
    const std::size_t p = s.U.cols();
    Mat le(p, x.rows());
    Mat re(p, x.cols());
    for (std::size_t k = 0; k < p; ++k) {
        const double w = std::sqrt(s.sigma[k]);
        for (std::size_t i = 0; i < x.rows(); ++i) le(k, i) = w * std::conj(s.U(i, k));
        for (std::size_t j = 0; j < x.cols(); ++j) re(k, j) = w * std::conj(s.V(j, k));
    }
    return make_factorization(vstack(f.L, le), vstack(f.R, re), x);
}

SchurFactorization extract_factorization(const Mat& block, std::size_t m, double t, double tol) {
    (void)t;
    if (!block.is_square() || m > block.rows())
        throw Error(ErrorKind::ShapeMismatch, "block must be square with m <= size");
    if (!psd_check(block, tol).is_psd) throw Error(ErrorKind::NotPSD, "block is not PSD");
    const std::size_t size = block.rows();
    const std::size_t n = size - m;
    const HermEig e = herm_eig(block, tol);
    std::size_t positive = 0;
    for (double lam : e.eigenvalues)
        if (lam > 0.0) ++positive;
    Mat c(positive, size);
    std::size_t row = 0;
    for (std::size_t k = 0; k < size; ++k) {
        const double lam = e.eigenvalues[k];
        if (lam <= 0.0) continue;
        const double w = std::sqrt(lam);
        for (std::size_t j = 0; j < size; ++j) c(row, j) = w * std::conj(e.eigenvectors(j, k));
        ++row;
    }
    const Mat x = block.block(0, m, m, n);
    return make_factorization(c.col_block(0, m), c.col_block(m, n), x);
}

AscentResult ascent(const Mat& x, int starts, std::uint64_t seed, int max_iterations) {
    const std::size_t rows = x.rows();
    const std::size_t cols = x.cols();
    AscentResult best;
    for (int trial = 0; trial < starts; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        Vec u = rng.unit_vector(rows);
        Vec v = rng.unit_vector(cols);
        double previous = 0.0;
        for (int it = 0; it < max_iterations; ++it) {
            Mat w(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) w(i, j) = std::conj(u[i]) * x(i, j) * v[j];
            const Svd ws = svd(w);
            if (ws.U.cols() == 0) break;
            // maximiser of Re sum W_ij Y_ij over contractions
            Mat y(rows, cols);
            for (std::size_t k = 0; k < ws.U.cols(); ++k)
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < cols; ++j)
                        y(i, j) += std::conj(ws.U(i, k)) * ws.V(j, k);
            const double ny = op_norm(y);
            if (ny == 0.0) break;
            const Mat z = schur_product(x, y);
            const Svd zs = svd(z);
            if (zs.U.cols() == 0) break;
            const double value = zs.sigma.front() / ny;
            u = zs.U.col(0);
            v = zs.V.col(0);
            if (value > best.value) {
                best.value = value;
                best.u = u;
                best.v = v;
                best.Y = (1.0 / ny) * y;
            }
            if (value - previous <= 1e-15 * value) break;
            previous = value;
        }
    }
    return best;
}

double ascent_lower_bound(const Mat& x, int starts, std::uint64_t seed) {
    if (starts < 1) throw Error(ErrorKind::InvalidArgument, "ascent needs at least one start");
    return ascent(x, starts, seed).value;
}

SchurFactorization stationary_factorization(const Mat& x, const Vec& u0, const Vec& v0,
                                            double eps) {
    const std::size_t rows = x.rows();
    const std::size_t cols = x.cols();
    Vec u = u0;
    Vec v = v0;
    for (auto& z : u) z += eps * unit_phase(z);
    for (auto& z : v) z += eps * unit_phase(z);
    for (const auto& z : u)
        if (z == cplx{}) throw Error(ErrorKind::InvalidArgument, "vanishing ascent coordinate");
    for (const auto& z : v)
        if (z == cplx{}) throw Error(ErrorKind::InvalidArgument, "vanishing ascent coordinate");

    Mat w(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w(i, j) = std::conj(u[i]) * x(i, j) * v[j];
    const Svd s = svd(w);
    const std::size_t p = s.U.cols();
    Mat l(p, rows);
    Mat r(p, cols);
    for (std::size_t k = 0; k < p; ++k) {
        const double root = std::sqrt(s.sigma[k]);
        for (std::size_t i = 0; i < rows; ++i) l(k, i) = root * std::conj(s.U(i, k)) / u[i];
        for (std::size_t j = 0; j < cols; ++j) r(k, j) = root * std::conj(s.V(j, k)) / v[j];
    }
    return correct_residual(make_factorization(std::move(l), std::move(r), x), x);
}

SchurFactorization compress_to_rank(const SchurFactorization& f, const Mat& x, double rel_tol) {
    const std::size_t r = rank_of(x, rel_tol);
    if (f.L.rows() == r) return make_factorization(f.L, f.R, x);
    if (r == 0) return make_factorization(Mat(0, x.rows()), Mat(0, x.cols()), x);

    // L* R = (P_R L)* R, then (L1)* R = L1* P_{L1} R, and finally onto range(R1).
    const SpanBasis qr = span_basis(f.R, rel_tol);
    const Mat l1 = projector(qr.basis) * f.L;
    const SpanBasis ql = span_basis(l1, rel_tol);
    const Mat r1 = projector(ql.basis) * f.R;
    const Svd s = svd(r1);
    const std::size_t keep = std::min(r, s.U.cols());
    const Mat q = s.U.col_block(0, keep);
    return make_factorization(q.adjoint() * l1, q.adjoint() * r1, x);
}

NormResult multiplier_norm(const Mat& x, double eps, const NormOptions& opts) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
    if (x.empty() || !x.all_finite())
        throw Error(ErrorKind::InvalidArgument, "input must be a nonempty finite matrix");
    if (max_abs(x) == 0.0) throw Error(ErrorKind::ZeroMatrix, "the zero matrix has norm 0");

    const double residual_cap = 1e-9 * std::max(1.0, frobenius_norm(x));
    NormResult out;
    out.eps_target = eps;
    out.lower = entry_lower_bound(x);
    out.lower_source = "entry";

    bool have = false;
    auto consider = [&](SchurFactorization f, const char* source) {
        f = correct_residual(std::move(f), x);
        if (!(f.residual <= residual_cap) || !std::isfinite(f.value)) return;
        if (!have || f.value < out.factorization.value) {
            out.factorization = std::move(f);
            out.upper = out.factorization.value;
            out.upper_source = source;
            have = true;
        }
    };

    consider(make_factorization(Mat::identity(x.rows()), x, x), "identity-left");
    consider(make_factorization(x.adjoint(), Mat::identity(x.cols()), x), "identity-right");
    {
        const Svd s = svd(x);
        const std::size_t p = s.U.cols();
        Mat l(p, x.rows()), r(p, x.cols());
        for (std::size_t k = 0; k < p; ++k) {
            const double root = std::sqrt(s.sigma[k]);
            for (std::size_t i = 0; i < x.rows(); ++i) l(k, i) = root * std::conj(s.U(i, k));
            for (std::size_t j = 0; j < x.cols(); ++j) r(k, j) = root * std::conj(s.V(j, k));
        }
        consider(make_factorization(std::move(l), std::move(r), x), "svd-balanced");
    }
    if (x.is_square() && psd_check(x, opts.tol).is_psd) {
        Mat hx = 0.5 * (x + x.adjoint());
        const Mat root = psd_sqrt(hx, opts.tol, opts.rel_tol);
        consider(make_factorization(root, root, x), "positive-square-root");
    }

    auto closed = [&] { return out.upper - out.lower <= eps; };

    if (!closed() && opts.starts > 0) {
        const AscentResult a = ascent(x, opts.starts, opts.seed, opts.ascent_iterations);
        if (a.value > out.lower) {
            out.lower = a.value;
            out.lower_source = "ascent";
        }
        if (opts.stationary_seed && !a.u.empty()) {
            for (double reg : {0.0, 1e-8, 1e-6, 1e-4}) {
                try {
                    consider(stationary_factorization(x, a.u, a.v, reg), "ascent-stationary-point");
                } catch (const Error&) {
                }
            }
        }
    }

    if (!closed()) {
        double floor = out.lower;
        Mat warm = gram_block(balance(out.factorization));
        for (int step = 0; step < opts.max_bisection_steps; ++step) {
            if (closed() || out.upper - floor <= 0.1 * eps) break;
            const double t = 0.5 * (floor + out.upper);
            FeasibilityOutcome fo = feasibility(x, t, warm, opts);
            out.iterations = step + 1;
            if (fo.have_certificate) consider(std::move(fo.certificate), "bisection");
            if (fo.feasible)
                warm = std::move(fo.last);
            else
                floor = t;
        }
    }

    SchurFactorization best = compress_to_rank(out.factorization, x, opts.rel_tol);
    if (best.residual <= residual_cap && best.value <= out.factorization.value + 1e-12)
        out.factorization = std::move(best);
    out.factorization = balance(std::move(out.factorization));
    out.upper = out.factorization.value;
    out.precision_reached = out.upper - out.lower <= eps;
    return out;
}

}  // namespace schurlab
