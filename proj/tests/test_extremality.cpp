#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "schurlab/error.hpp"
#include "schurlab/extremality.hpp"
#include "schurlab/linalg.hpp"
#include "schurlab/random.hpp"
#include "schurlab/schur_ops.hpp"

using namespace schurlab;

namespace {

const double h = std::sqrt(2.0) / 2.0;

Mat paper_l() { return Mat{{1, 0, h, h}, {0, 1, h, cplx(0, h)}}; }
Mat paper_x() { return paper_l().adjoint() * paper_l(); }

// Independent of q_membership: unit diagonal and smallest eigenvalue.
bool in_q(const Mat& x, double tol) {
    for (std::size_t i = 0; i < x.rows(); ++i)
        if (std::abs(x(i, i) - 1.0) > tol) return false;
    if (hermitian_defect(x) > tol) return false;
    return herm_eig(x, 1.0).eigenvalues.front() >= -tol;
}

void check_q_split(const Mat& x, const ConvexSplit& s) {
    const Mat mix = (1.0 - s.alpha) * s.Y + s.alpha * s.Z;
    CHECK(frobenius_norm(x - mix) <= 1e-9);
    CHECK(frobenius_norm(s.Y - x) >= 1e-6);
    CHECK(in_q(s.Y, 1e-9));
    CHECK(in_q(s.Z, 1e-9));
    CHECK(validate_q_split(x, s).ok);
}

}  // namespace

TEST_CASE("q_membership") {
    CHECK(q_membership(Mat::identity(3)));
    CHECK(q_membership(Mat::constant(4, 4, 1.0)));
    CHECK_FALSE(q_membership(Mat{{1, 0.5}, {0.5, 0.25}}));
    CHECK_FALSE(q_membership(Mat{{1, 2}, {2, 1}}));
}

TEST_CASE("q_extremality on the bundled examples") {
    const ExtremalityReport r = q_extremality(paper_x());
    CHECK(r.verdict == Verdict::Extremal);
    CHECK(r.rank == 2);
    CHECK(r.rank_bound == doctest::Approx(2.0));
    CHECK(r.margin > 0.1);
    CHECK_FALSE(r.split.has_value());

    const ExtremalityReport i4 = q_extremality(Mat::identity(4));
    CHECK(i4.verdict == Verdict::NotExtremal);
    REQUIRE(i4.split.has_value());
    check_q_split(Mat::identity(4), *i4.split);

    const ExtremalityReport ones = q_extremality(Mat::constant(5, 5, 1.0));
    CHECK(ones.verdict == Verdict::Extremal);
    CHECK(ones.rank == 1);

    CHECK_THROWS_AS(q_extremality(Mat{{1, 0.5}, {0.5, 0.25}}), Error);
}

TEST_CASE("q_decompose of identities") {
    const ConvexSplit s2 = q_decompose(Mat::identity(2));
    const Mat plus{{1, 1}, {1, 1}}, minus{{1, -1}, {-1, 1}};
    const bool direct = frobenius_norm(s2.Y - plus) < 1e-12 && frobenius_norm(s2.Z - minus) < 1e-12;
    const bool swapped = frobenius_norm(s2.Y - minus) < 1e-12 && frobenius_norm(s2.Z - plus) < 1e-12;
    CHECK((direct || swapped));
    for (std::size_t n = 2; n <= 8; ++n) {
        const Mat i = Mat::identity(n);
        const ConvexSplit s = q_decompose(i);
        CHECK(s.alpha == 0.5);
        CHECK(frobenius_norm(i - 0.5 * (s.Y + s.Z)) <= 1e-12);
        check_q_split(i, s);
    }
    CHECK_THROWS_AS(q_decompose(paper_x()), Error);
}

TEST_CASE("random non-extremal elements of Q_5") {
    Rng rng(61);
    for (int t = 0; t < 30; ++t) {
        const Mat x = rng.correlation(5, 3);
        const ExtremalityReport r = q_extremality(x);
        CHECK(r.verdict == Verdict::NotExtremal);
        REQUIRE(r.split.has_value());
        check_q_split(x, *r.split);
    }
}

TEST_CASE("extremality via F and via X agree") {
    Rng rng(63);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng.index(9);
        const Mat x = rng.correlation(n, 1 + rng.index(3));
        const ExtremalityReport r = q_extremality(x);
        if (r.verdict == Verdict::Inconclusive) continue;
        const bool ext = r.verdict == Verdict::Extremal;
        CHECK(ext == oracle::is_full(psd_sqrt(x).columns()));
        CHECK(ext == oracle::is_full(x.columns()));
        if (ext) CHECK(r.rank * r.rank <= n);
    }
}

TEST_CASE("positive_extremality_necessary") {
    const Mat x{{1, 0.5}, {0.5, 0.25}};
    const ExtremalityReport r = positive_extremality_necessary(x);
    CHECK(r.verdict == Verdict::NecessaryConditionsPass);
    CHECK(r.unit_indices == std::vector<std::size_t>{0});

    const ExtremalityReport q = positive_extremality_necessary(paper_x());
    CHECK(q.unit_indices.size() == 4);
    CHECK(q.fullness.is_full == q_extremality(paper_x()).fullness.is_full);

    const ExtremalityReport i2 = positive_extremality_necessary(Mat::identity(2));
    CHECK(i2.verdict == Verdict::NotExtremal);
    REQUIRE(i2.split.has_value());
    CHECK(validate_positive_split(Mat::identity(2), *i2.split).ok);

    CHECK_THROWS_AS(positive_extremality_necessary(Mat{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("positive splits are valid") {
    Rng rng(65);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        // D C D with C a correlation matrix and D = diag(1, 1, d_3, ...), d_j < 1:
        // the unit columns of the square root are too few to be full
        const std::size_t n = 3 + rng.index(3);
        const Mat c = rng.correlation(n, 2 + rng.index(2));
        std::vector<double> d(n, 1.0);
        for (std::size_t i = 2; i < n; ++i) d[i] = rng.uniform(0.3, 0.95);
        const Mat dm = Mat::diagonal(std::span<const double>(d));
        const Mat x = dm * c * dm;
        const ExtremalityReport r = positive_extremality_necessary(x);
        if (r.verdict != Verdict::NotExtremal) continue;
        REQUIRE(r.split.has_value());
        const ConvexSplit& s = *r.split;
        CHECK(validate_positive_split(x, s).ok);
        CHECK(herm_eig(s.Y, 1.0).eigenvalues.front() >= -1e-9);
        CHECK(herm_eig(s.Z, 1.0).eigenvalues.front() >= -1e-9);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(s.Y(i, i).real() <= 1.0 + 1e-9);
            CHECK(s.Z(i, i).real() <= 1.0 + 1e-9);
        }
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("q_face_check") {
    const Mat x = paper_x();
    CHECK(q_face_check(x, 0.5, x, x));
    const ConvexSplit s = q_decompose(Mat::identity(2));
    CHECK(q_face_check(Mat::identity(2), 0.5, s.Y, s.Z));

    Rng rng(67);
    for (int t = 0; t < 15; ++t) {
        const Mat y = rng.correlation(4, 2), z = rng.correlation(4, 3);
        const double a = rng.uniform(0.1, 0.9);
        CHECK(q_face_check((1.0 - a) * y + cplx(a) * z, a, y, z));
    }
    CHECK_THROWS_AS(q_face_check(x, 0.0, x, x), Error);
    CHECK_THROWS_AS(q_face_check(x, 0.5, Mat::identity(4), x), Error);
}

TEST_CASE("general_necessary_conditions") {
    const ExtremalityReport ones = general_necessary_conditions(Mat::constant(2, 3, 1.0));
    CHECK(ones.verdict == Verdict::NecessaryConditionsPass);
    CHECK(ones.rank == 1);

    const ExtremalityReport q = general_necessary_conditions(paper_x());
    REQUIRE(q.factorization.has_value());
    CHECK(q.unit_columns);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(norm2(q.factorization->L.col(j)) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(norm2(q.factorization->R.col(j)) == doctest::Approx(1.0).epsilon(1e-6));
    }
    if (q.verdict == Verdict::NecessaryConditionsPass) CHECK(q.rank * q.rank <= 8);
}

TEST_CASE("small example: midpoint of two rank-one multipliers") {
    const Mat x{{1, 0.5}, {0.5, 0.25}};
    CHECK_FALSE(rank_one_extremal_check(x));
    ExtremalityOptions o;
    o.normalize = true;
    const ExtremalityReport r = general_necessary_conditions(x, o);
    CHECK(r.verdict == Verdict::NotExtremal);
    REQUIRE(r.split.has_value());
    const ConvexSplit& s = *r.split;
    const Mat xs = cplx(1.0 / r.scale) * x;
    CHECK(validate_general_split(xs, s).ok);
    // summands (1, 1/2)^T (1, 3/4) and (1, 1/2)^T (1, 1/4)
    const Mat y{{1, 0.75}, {0.5, 0.375}}, z{{1, 0.25}, {0.5, 0.125}};
    const bool paired = (frobenius_norm(s.Y - y) < 1e-8 && frobenius_norm(s.Z - z) < 1e-8) ||
                        (frobenius_norm(s.Y - z) < 1e-8 && frobenius_norm(s.Z - y) < 1e-8);
    CHECK(paired);
    CHECK(frobenius_norm(xs - 0.5 * (s.Y + s.Z)) <= 1e-8);
    CHECK(rank_of(s.Y) == 1);
    CHECK(rank_of(s.Z) == 1);
}

TEST_CASE("general_decompose_from_witness") {
    CHECK_THROWS_AS(general_decompose_from_witness(Mat::identity(2), Mat::identity(2), Mat::zeros(2, 2)),
                    Error);
    // L = R = I_2: combined columns {e1, e2, e1, e2} are not full; B = E12 + E21 kills every state
    Mat b(2, 2);
    b(0, 1) = b(1, 0) = 1.0;
    const ConvexSplit s = general_decompose_from_witness(Mat::identity(2), Mat::identity(2), b);
    REQUIRE(s.y_factor.has_value());
    CHECK(column_norm(s.y_factor->L) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(column_norm(s.y_factor->R) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.distinctness > 1e-6);
    CHECK(validate_general_split(Mat::identity(2), s).ok);
}

TEST_CASE("fvg factorizations") {
    const FvgFactorization o = fvg_factorization(Mat::constant(3, 3, 1.0));
    CHECK(o.residual <= 1e-8);
    CHECK(rank_of(o.F) == 1);
    const FvgFactorization p = fvg_factorization(paper_x());
    CHECK(p.residual <= 1e-8);
    CHECK(in_q(p.F * p.F, 1e-8));
    CHECK(in_q(p.G * p.G, 1e-8));
    CHECK(frobenius_norm(p.F * p.V * p.G - paper_x()) <= 1e-8);

    const Mat d = Mat::diagonal(std::vector<cplx>{cplx(0, 1), -1.0, cplx(h, -h)});
    const FvgFactorization fd = fvg_from_factorization(Mat::identity(3), d, d);
    CHECK(frobenius_norm(fd.F - Mat::identity(3)) < 1e-9);
    CHECK(frobenius_norm(fd.G - Mat::identity(3)) < 1e-9);
    CHECK(frobenius_norm(fd.V - d) < 1e-9);
}

TEST_CASE("decomposition bound") {
    CHECK(corollary_decomposition_bound(Mat::identity(4)) == 2.0);
    CHECK(corollary_decomposition_bound(paper_x()) == doctest::Approx(1.0));
    CHECK(corollary_decomposition_bound(Mat::constant(9, 9, 1.0)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("generate_extremal_q") {
    const auto s = generate_extremal_q(4, 2, 20, 5);
    CHECK_FALSE(s.empty());
    for (const auto& [x, r] : s) {
        CHECK(r.verdict == Verdict::Extremal);
        CHECK(r.rank == 2);
        CHECK(q_extremality(x).verdict == Verdict::Extremal);
    }
    CHECK(generate_extremal_q(3, 2, 200, 1).empty());
    const auto one = generate_extremal_q(1, 1, 1, 0);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0].first(0, 0) - cplx(1)) < 1e-12);
}

TEST_CASE("extend_columns") {
    Rng rng(69);
    for (std::size_t k : {1u, 10u}) {
        const std::vector<Vec> extra = rng.unit_columns(2, k).columns();
        const auto [x, r] = extend_columns(paper_l(), extra);
        CHECK(x.rows() == 4 + k);
        CHECK(r.verdict == Verdict::Extremal);
    }
    const std::vector<Vec> dup{paper_l().col(2)};
    CHECK(extend_columns(paper_l(), dup).second.verdict == Verdict::Extremal);

    CHECK_THROWS_AS(extend_columns(Mat::identity(2), dup), Error);
    const std::vector<Vec> bad{{1, 1}};
    CHECK_THROWS_AS(extend_columns(paper_l(), bad), Error);
}
