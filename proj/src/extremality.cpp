#include "schurlab/extremality.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "schurlab/error.hpp"
#include "schurlab/random.hpp"
#include "schurlab/schur_ops.hpp"

namespace schurlab {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Extremal: return "Extremal";
        case Verdict::NotExtremal: return "NotExtremal";
        case Verdict::NecessaryConditionsPass: return "NecessaryConditionsPass";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

namespace {

double residual_of_split(const Mat& x, const ConvexSplit& s) {
    return frobenius_norm(x - ((1.0 - s.alpha) * s.Y + s.alpha * s.Z));
}

void finish_split(const Mat& x, ConvexSplit& s) {
    s.reconstruction_residual = residual_of_split(x, s);
    s.distinctness = frobenius_norm(s.Y - x);
}

void require_qn(const Mat& x, double tol) {
    if (!x.is_square()) throw Error(ErrorKind::NotSquare, "Q_n elements are square");
    if (!q_membership(x, tol)) throw Error(ErrorKind::NotInQn, "input is not PSD with unit diagonal");
}

// Tries each complement witness B until F B F clears the distinctness floor.
std::optional<ConvexSplit> positive_split(const Mat& x, const Mat& f, const FullnessResult& fr,
                                          double weight, double floor) {
    for (const Mat& b : fr.complement) {
        const Mat fbf = weight * (f * b * f);
        if (frobenius_norm(fbf) < floor) continue;
        ConvexSplit s;
        s.alpha = 0.5;
        s.Y = x + fbf;
        s.Z = x - fbf;
        finish_split(x, s);
        return s;
    }
    return std::nullopt;
}

// Y = L* R together with the factorization certifying ||S_Y|| <= ||L||_c ||R||_c.
std::pair<Mat, SchurFactorization> product_with_certificate(Mat l, Mat r) {
    Mat y = l.adjoint() * r;
    SchurFactorization f = make_factorization(std::move(l), std::move(r), y);
    return {std::move(y), std::move(f)};
}

std::vector<double> column_norms(const Mat& m) {
    std::vector<double> out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = norm2(m.col(j));
    return out;
}

}  // namespace

bool q_membership(const Mat& x, double tol) {
    if (!x.is_square()) throw Error(ErrorKind::NotSquare, "Q_n membership needs a square matrix");
    for (std::size_t i = 0; i < x.rows(); ++i)
        if (std::abs(x(i, i) - 1.0) > tol) return false;
    return psd_check(x, tol).is_psd;
}

ConvexSplit q_decompose(const Mat& x, const ExtremalityOptions& opts) {
    require_qn(x, opts.tol);
    const Mat f = psd_sqrt(x, opts.tol, opts.rel_tol);
    const FullnessResult fr = fullness_test(f, opts.rel_tol);
    if (fr.is_full) throw Error(ErrorKind::ActuallyExtremal, "columns of the square root are full");
    auto s = positive_split(x, f, fr, 1.0, opts.distinctness_floor);
    if (!s) throw Error(ErrorKind::WitnessDegenerate, "every witness gives F B F below the floor");
    return *s;
}

ExtremalityReport q_extremality(const Mat& x, const ExtremalityOptions& opts) {
    require_qn(x, opts.tol);
    const std::size_t n = x.rows();
    ExtremalityReport rep;
    rep.fullness = fullness_test(x, opts.rel_tol);
    rep.margin = rep.fullness.margin;
    rep.rank = rank_of(x, opts.rel_tol);
    rep.rank_bound = std::sqrt(static_cast<double>(n));
    rep.rank_bound_holds = rep.rank * rep.rank <= n;
    rep.unit_indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.unit_indices[i] = i;

    if (rep.fullness.is_full) {
        rep.verdict = Verdict::Extremal;
        if (!rep.rank_bound_holds) rep.notes = "rank bound violated by a full column set";
    } else {
        try {
            rep.split = q_decompose(x, opts);
            rep.verdict = Verdict::NotExtremal;
        } catch (const Error& e) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes = e.what();
        }
    }
    if (rep.margin < opts.audit_margin) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes = "fullness margin below audit threshold";
    }
    return rep;
}

ExtremalityReport positive_extremality_necessary(const Mat& x, const ExtremalityOptions& opts) {
    const double norm = positive_multiplier_norm(x, opts.tol);
    if (std::abs(norm - 1.0) > opts.unit_tol)
        throw Error(ErrorKind::NormNotOne, "max diagonal is not 1");
    const std::size_t n = x.rows();
    const Mat f = psd_sqrt(x, opts.tol, opts.rel_tol);
    const std::vector<double> norms = column_norms(f);

    ExtremalityReport rep;
    std::vector<Vec> unit;
    double weight = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(norms[j] - 1.0) <= opts.unit_tol) {
            rep.unit_indices.push_back(j);
            unit.push_back(f.col(j));
        } else {
            weight = std::min(weight, 1.0 - norms[j] * norms[j]);
        }
    }
    rep.fullness = fullness_test(unit, opts.rel_tol);
    rep.margin = rep.fullness.margin;
    rep.rank = rank_of(x, opts.rel_tol);
    rep.rank_bound = std::sqrt(static_cast<double>(n));
    rep.rank_bound_holds = rep.fullness.span_rank * rep.fullness.span_rank <= n;

    if (rep.fullness.is_full) {
        rep.verdict = Verdict::NecessaryConditionsPass;
    } else {
        rep.split = positive_split(x, f, rep.fullness, weight, opts.distinctness_floor);
        rep.verdict = rep.split ? Verdict::NotExtremal : Verdict::Inconclusive;
        if (!rep.split) rep.notes = "every witness gives F B F below the floor";
    }
    if (rep.margin < opts.audit_margin) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes = "fullness margin below audit threshold";
    }
    return rep;
}

bool q_face_check(const Mat& x, double alpha, const Mat& y, const Mat& z,
                  const ExtremalityOptions& opts) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorKind::PreconditionViolated, "alpha must lie in (0, 1)");
    require_qn(x, opts.tol);
    if (y.rows() != x.rows() || y.cols() != x.cols() || z.rows() != x.rows() ||
        z.cols() != x.cols())
        throw Error(ErrorKind::ShapeMismatch, "Y and Z must have the shape of X");
    const double recon = frobenius_norm(x - ((1.0 - alpha) * y + alpha * z));
    if (recon > 1e-8 * std::max(1.0, frobenius_norm(x)))
        throw Error(ErrorKind::PreconditionViolated, "decomposition does not reconstruct X");
    for (const Mat* m : {&y, &z}) {
        if (max_abs(*m) == 0.0) continue;
        const NormResult nr = multiplier_norm(*m, opts.eps, opts.norm);
        if (nr.upper > 1.0 + opts.norm_slack)
            throw Error(ErrorKind::PreconditionViolated, "a summand has multiplier norm above 1");
    }
    const double member_tol = std::max(opts.tol, opts.norm_slack);
    return q_membership(y, member_tol) && q_membership(z, member_tol);
}

ConvexSplit general_decompose_from_witness(const Mat& l, const Mat& r, const Mat& b, double tol) {
    const std::size_t rows = l.rows();
    if (r.rows() != rows) throw Error(ErrorKind::RowCountMismatch, "L and R row counts differ");
    if (b.rows() != rows || b.cols() != rows)
        throw Error(ErrorKind::WitnessInvalid, "witness must be r x r");
    if (hermitian_defect(b) > 1e-9) throw Error(ErrorKind::WitnessInvalid, "witness not Hermitian");
    if (std::abs(op_norm(b) - 1.0) > tol) throw Error(ErrorKind::WitnessInvalid, "witness norm is not 1");
    for (const Mat* m : {&l, &r})
        for (std::size_t j = 0; j < m->cols(); ++j) {
            const Vec c = m->col(j);
            if (std::abs(norm2(c) - 1.0) > tol)
                throw Error(ErrorKind::WitnessInvalid, "columns must be unit vectors");
            if (std::abs(dot(c, b * c)) > 1e-8)
                throw Error(ErrorKind::WitnessInvalid, "witness does not vanish on a column state");
        }

    const Mat id = Mat::identity(rows);
    const Mat plus = psd_sqrt(id + b, 1e-9, 0.0);
    const Mat minus = psd_sqrt(id - b, 1e-9, 0.0);
    const Mat x = l.adjoint() * r;
    ConvexSplit s;
    s.alpha = 0.5;
    std::tie(s.Y, s.y_factor) = product_with_certificate(plus * l, plus * r);
    std::tie(s.Z, s.z_factor) = product_with_certificate(minus * l, minus * r);
    finish_split(x, s);
    return s;
}

ExtremalityReport general_necessary_conditions(const Mat& x_in, const ExtremalityOptions& opts) {
    const NormResult nr = multiplier_norm(x_in, opts.eps, opts.norm);
    if (!nr.precision_reached)
        throw Error(ErrorKind::PrecisionNotReached, "multiplier norm bracket is wider than eps");

    ExtremalityReport rep;
    Mat x = x_in;
    SchurFactorization fact = nr.factorization;
    if (opts.normalize) {
        rep.scale = 1.0 / nr.upper;
        x *= rep.scale;
        const double c = std::sqrt(rep.scale);
        fact = make_factorization(c * fact.L, c * fact.R, x);
    } else if (nr.lower - opts.eps > 1.0 || nr.upper + opts.eps < 1.0) {
        throw Error(ErrorKind::NormBracketExcludesOne, "multiplier norm is not 1");
    }
    rep.factorization = fact;
    rep.relative_to_factorization = true;

    // work with unit-normalised columns: X = v * Ln* Rn
    const double v = fact.value;
    const double root = std::sqrt(v);
    const Mat ln = (1.0 / root) * fact.L;
    const Mat rn = (1.0 / root) * fact.R;
    const std::size_t r = ln.rows();
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();
    rep.rank = r;
    rep.rank_bound = std::sqrt(static_cast<double>(m + n));
    rep.rank_bound_holds = r * r <= m + n;

    // (i) unit columns; R is scanned first
    const std::vector<double> lnorms = column_norms(ln);
    const std::vector<double> rnorms = column_norms(rn);
    for (char which : {'R', 'L'}) {
        const auto& norms = which == 'R' ? rnorms : lnorms;
        for (std::size_t j = 0; j < norms.size() && !rep.short_column; ++j)
            if (std::abs(norms[j] - 1.0) > opts.unit_tol) rep.short_column = ShortColumn{which, j, norms[j]};
    }
    if (rep.short_column) {
        rep.unit_columns = false;
        const ShortColumn sc = *rep.short_column;
        Mat mu_f = sc.factor == 'R' ? rn : ln;
        Mat nu_f = mu_f;
        Vec w = mu_f.col(sc.index);
        const double rho = sc.norm;
        if (rho > 0.0) {
            for (auto& z : w) z /= rho;
        } else {
            w.assign(w.size(), cplx{});
            w[0] = 1.0;
        }
        // (1+rho)/2 and (3 rho - 1)/2 average to rho and have modulus <= 1
        Vec mu(w.size()), nu(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            mu[i] = 0.5 * (1.0 + rho) * w[i];
            nu[i] = 0.5 * (3.0 * rho - 1.0) * w[i];
        }
        mu_f.set_col(sc.index, mu);
        nu_f.set_col(sc.index, nu);
        const Mat& lmu = sc.factor == 'R' ? ln : mu_f;
        const Mat& rmu = sc.factor == 'R' ? mu_f : rn;
        const Mat& lnu = sc.factor == 'R' ? ln : nu_f;
        const Mat& rnu = sc.factor == 'R' ? nu_f : rn;
        ConvexSplit s;
        s.alpha = 0.5;
        std::tie(s.Y, s.y_factor) = product_with_certificate(root * lmu, root * rmu);
        std::tie(s.Z, s.z_factor) = product_with_certificate(root * lnu, root * rnu);
        finish_split(x, s);
        rep.split = std::move(s);
        rep.verdict = Verdict::NotExtremal;
        rep.relative_to_factorization = false;
        rep.margin = 1.0;
        rep.notes = std::string("column ") + sc.factor + std::to_string(sc.index) + " is not a unit vector";
        return rep;
    }

    // (iii) fullness of all columns of L and R in C^r
    rep.fullness = fullness_test(hstack(ln, rn), opts.rel_tol);
    rep.margin = rep.fullness.margin;
    if (!rep.fullness.is_full) {
        for (const Mat& b : rep.fullness.complement) {
            ConvexSplit s;
            try {
                s = general_decompose_from_witness(ln, rn, b, std::max(opts.unit_tol, 1e-7));
            } catch (const Error&) {
                continue;
            }
            if (s.distinctness * v < opts.distinctness_floor) continue;
            std::tie(s.Y, s.y_factor) = product_with_certificate(root * s.y_factor->L, root * s.y_factor->R);
            std::tie(s.Z, s.z_factor) = product_with_certificate(root * s.z_factor->L, root * s.z_factor->R);
            finish_split(x, s);
            rep.split = std::move(s);
            break;
        }
        rep.verdict = rep.split ? Verdict::NotExtremal : Verdict::Inconclusive;
        rep.relative_to_factorization = !rep.split;
        if (!rep.split) rep.notes = "no usable witness for the split";
    } else {
        rep.verdict = Verdict::NecessaryConditionsPass;
        if (!rep.rank_bound_holds)
            rep.notes = "cross-check failed: full column set with rank above sqrt(m+n)";
    }
    if (rep.margin < opts.audit_margin) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes = "fullness margin below audit threshold";
    }
    return rep;
}

FvgFactorization fvg_from_factorization(const Mat& l, const Mat& r, const Mat& x, double tol) {
    for (const Mat* m : {&l, &r})
        for (double c : column_norms(*m))
            if (std::abs(c - 1.0) > tol) throw Error(ErrorKind::ColumnsNotUnit, "factorization has a short column");
    const Polar pl = polar(l);
    const Polar pr = polar(r);
    FvgFactorization out;
    out.F = pl.F;
    out.G = pr.F;
    out.V = pl.W.adjoint() * pr.W;
    out.residual = frobenius_norm(x - out.F * out.V * out.G);
    return out;
}

FvgFactorization fvg_factorization(const Mat& x, const ExtremalityOptions& opts) {
    const NormResult nr = multiplier_norm(x, opts.eps, opts.norm);
    const double tol = std::max(opts.unit_tol, nr.upper - nr.lower + 1e-9);
    return fvg_from_factorization(nr.factorization.L, nr.factorization.R, x, tol);
}

double corollary_decomposition_bound(const Mat& x, const ExtremalityOptions& opts) {
    require_qn(x, opts.tol);
    return static_cast<double>(rank_of(x, opts.rel_tol)) / std::sqrt(static_cast<double>(x.rows()));
}

std::vector<std::pair<Mat, ExtremalityReport>> generate_extremal_q(
    std::size_t n, std::size_t r, std::size_t trials, std::uint64_t seed,
    const ExtremalityOptions& opts) {
    std::vector<std::pair<Mat, ExtremalityReport>> out;
    if (n == 0 || r == 0) return out;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        const Mat l = rng.unit_columns(r, n);
        const FullnessResult fr = fullness_test(l, opts.rel_tol);
        if (!fr.is_full || fr.span_rank != r) continue;
        Mat x = l.adjoint() * l;
        for (std::size_t i = 0; i < n; ++i) x(i, i) = 1.0;
        ExtremalityReport rep = q_extremality(x, opts);
        if (rep.verdict == Verdict::Extremal) out.emplace_back(std::move(x), std::move(rep));
    }
    return out;
}

std::pair<Mat, ExtremalityReport> extend_columns(const Mat& l, std::span<const Vec> extra,
                                                 const ExtremalityOptions& opts) {
    for (double c : column_norms(l))
        if (std::abs(c - 1.0) > opts.unit_tol) throw Error(ErrorKind::BaseNotFull, "base columns must be unit vectors");
    const FullnessResult fr = fullness_test(l, opts.rel_tol);
    if (!fr.is_full || fr.span_rank != l.rows())
        throw Error(ErrorKind::BaseNotFull, "base columns are not a full set spanning C^r");
    for (const auto& e : extra) {
        if (e.size() != l.rows()) throw Error(ErrorKind::DimensionMismatch, "extra vector has wrong length");
        if (std::abs(norm2(e) - 1.0) > opts.unit_tol) throw Error(ErrorKind::ExtraNotUnit, "extra vector is not a unit vector");
    }
    const Mat lhat = extra.empty() ? l : hstack(l, Mat::from_columns(extra));
    Mat x = lhat.adjoint() * lhat;
    for (std::size_t i = 0; i < x.rows(); ++i) x(i, i) = 1.0;
    ExtremalityReport rep = q_extremality(x, opts);
    return {std::move(x), std::move(rep)};
}

SplitCheck validate_q_split(const Mat& x, const ConvexSplit& s, double tol) {
    SplitCheck c;
    c.residual = residual_of_split(x, s);
    c.distinctness = frobenius_norm(s.Y - x);
    c.y_member = q_membership(s.Y, tol);
    c.z_member = q_membership(s.Z, tol);
    c.ok = c.residual <= 1e-9 && c.distinctness >= 1e-6 && c.y_member && c.z_member &&
           s.alpha > 0.0 && s.alpha < 1.0;
    return c;
}

SplitCheck validate_positive_split(const Mat& x, const ConvexSplit& s, double tol) {
    SplitCheck c;
    c.residual = residual_of_split(x, s);
    c.distinctness = frobenius_norm(s.Y - x);
    auto ok = [&](const Mat& m) {
        if (!psd_check(m, tol).is_psd) return false;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, i).real() > 1.0 + tol) return false;
        return true;
    };
    c.y_member = ok(s.Y);
    c.z_member = ok(s.Z);
    c.ok = c.residual <= 1e-9 && c.distinctness >= 1e-6 && c.y_member && c.z_member;
    return c;
}

SplitCheck validate_general_split(const Mat& x, const ConvexSplit& s, double norm_slack) {
    SplitCheck c;
    c.residual = residual_of_split(x, s);
    c.distinctness = frobenius_norm(s.Y - x);
    auto certified = [&](const Mat& m, const std::optional<SchurFactorization>& f) {
        if (!f) return false;
        const double recon = frobenius_norm(m - f->L.adjoint() * f->R);
        return recon <= 1e-9 * std::max(1.0, frobenius_norm(m)) &&
               factorization_upper_bound(f->L, f->R) <= 1.0 + norm_slack;
    };
    c.y_member = certified(s.Y, s.y_factor);
    c.z_member = certified(s.Z, s.z_factor);
    c.ok = c.residual <= 1e-9 && c.distinctness >= 1e-6 && c.y_member && c.z_member;
    return c;
}

}  // namespace schurlab
