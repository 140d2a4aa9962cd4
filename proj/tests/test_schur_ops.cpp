#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "schurlab/error.hpp"
#include "schurlab/linalg.hpp"
#include "schurlab/random.hpp"
#include "schurlab/schur_ops.hpp"

using namespace schurlab;

namespace {
const double h = std::sqrt(2.0) / 2.0;
}

TEST_CASE("schur_product") {
    Rng rng(1);
    const Mat x = rng.gaussian_matrix(3, 4);
    CHECK(schur_product(x, Mat::constant(3, 4, 1.0)) == x);
    const Mat d{{1, 0}, {0, 0.25}};
    CHECK(schur_product(d, Mat::identity(2)) == d);
    CHECK_THROWS_AS(schur_product(x, Mat(4, 3)), Error);

    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng.index(10);
        const Mat p = schur_product(rng.psd(n, 1 + rng.index(n)), rng.psd(n, 1 + rng.index(n)));
        CHECK(herm_eig(p).eigenvalues.front() >= -1e-10);
    }
}

TEST_CASE("column_norm") {
    CHECK(column_norm(Mat::identity(5)) == doctest::Approx(1.0));
    const Mat l{{1, 0, h, h}, {0, 1, h, cplx(0, h)}};
    CHECK(column_norm(l) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(column_norm(Mat{{3}, {4}}) == doctest::Approx(5.0));

    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        const Mat a = rng.gaussian_matrix(4, 3);
        CHECK(std::abs(column_norm(rng.unitary(4) * a) - column_norm(a)) < 1e-12);
    }
}

TEST_CASE("factorization_upper_bound") {
    CHECK(factorization_upper_bound(Mat::identity(3), Mat::identity(3)) == doctest::Approx(1.0));
    const Mat half{{1, 0}, {0, 0.5}};
    CHECK(factorization_upper_bound(half, half) == doctest::Approx(1.0));
    Rng rng(4);
    CHECK(factorization_upper_bound(rng.unit_columns(3, 5), rng.unit_columns(3, 2)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(factorization_upper_bound(Mat(2, 2), Mat(3, 2)), Error);

    for (int t = 0; t < 100; ++t) {
        const std::size_t r = 1 + rng.index(4);
        const Mat l = rng.gaussian_matrix(r, 1 + rng.index(5));
        const Mat rr = rng.gaussian_matrix(r, 1 + rng.index(5));
        CHECK(entry_lower_bound(l.adjoint() * rr) <= factorization_upper_bound(l, rr) + 1e-12);
    }
}

TEST_CASE("positive_multiplier_norm") {
    Rng rng(6);
    CHECK(positive_multiplier_norm(rng.correlation(5, 3)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(positive_multiplier_norm(Mat{{2, 0}, {0, 3}}) == doctest::Approx(3.0));
    CHECK(positive_multiplier_norm(Mat{{1, 0.5}, {0.5, 0.25}}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(positive_multiplier_norm(Mat{{1, 2}, {2, 1}}), Error);

    // constant diagonal: the square-root factor L = W F has columns of norm sqrt(c)
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + rng.index(5);
        const double c = rng.uniform(0.5, 3.0);
        const Mat x = c * rng.correlation(n, 1 + rng.index(n));
        const Mat f = psd_sqrt(x);
        const Mat l = rng.unitary(n) * f;
        CHECK(std::abs(positive_multiplier_norm(x) - factorization_upper_bound(l, l)) < 1e-9);
    }
}

TEST_CASE("entry_lower_bound") {
    CHECK(entry_lower_bound(Mat::zeros(3, 3)) == 0.0);
    CHECK(entry_lower_bound(Mat::identity(4)) == 1.0);
    CHECK(entry_lower_bound(Mat{{1, 1}, {1, -1}}) == 1.0);
    Rng rng(8);
    CHECK(entry_lower_bound(rng.correlation(6, 2)) == doctest::Approx(1.0));
}

TEST_CASE("rank_one_extremal_check") {
    CHECK(rank_one_extremal_check(Mat::constant(3, 4, 1.0)));
    CHECK_FALSE(rank_one_extremal_check(Mat{{1, 0.5}, {0.5, 0.25}}));
    const Mat y{{1, cplx(0, 1)}, {cplx(0, -1), 1}};
    CHECK(oracle::det2(y) < 1e-15);
    CHECK(rank_one_extremal_check(y));
    CHECK_FALSE(rank_one_extremal_check(Mat::identity(2)));
}

TEST_CASE("cheap_bounds bracket") {
    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        const Mat x = rng.gaussian_matrix(1 + rng.index(4), 1 + rng.index(4));
        const NormBounds b = cheap_bounds(x);
        CHECK(b.lower <= b.upper + 1e-12);
    }
    const NormBounds p = cheap_bounds(Mat{{2, 1}, {1, 3}});
    CHECK(p.lower == doctest::Approx(3.0));
    CHECK(p.upper == doctest::Approx(3.0));
}
