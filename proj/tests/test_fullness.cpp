#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "schurlab/error.hpp"
#include "schurlab/fullness.hpp"
#include "schurlab/linalg.hpp"
#include "schurlab/random.hpp"

using namespace schurlab;

namespace {

const double h = std::sqrt(2.0) / 2.0;

std::vector<Vec> paper_set() {
    return {{1, 0}, {0, 1}, {h, h}, {h, cplx(0, h)}};
}

void check_witness(const FullnessResult& fr, const std::vector<Vec>& vs) {
    REQUIRE(fr.witness.has_value());
    const WitnessDefects d = witness_defects(*fr.witness, vs, fr.basis);
    CHECK(d.asymmetry <= 1e-9);
    CHECK(d.norm_error <= 1e-9);
    CHECK(d.support_error <= 1e-9);
    double scale = 1.0;
    for (const auto& v : vs) scale = std::max(scale, norm2(v) * norm2(v));
    CHECK(d.max_state <= 1e-9 * scale);
}

}  // namespace

TEST_CASE("example set in C^2 is full") {
    const FullnessResult fr = fullness_test(paper_set());
    CHECK(fr.is_full);
    CHECK(fr.span_rank == 2);
    CHECK(fr.achieved_rank == 4);
    CHECK(fr.required_rank == 4);
    CHECK_FALSE(fr.witness.has_value());
    CHECK(fr.margin > 0.1);
    CHECK(square_dim_bound_check(fr, 4));
}

TEST_CASE("standard basis is not full; witness E12 + E21") {
    for (std::size_t n = 2; n <= 5; ++n) {
        const FullnessResult fr = fullness_test(Mat::identity(n));
        CHECK_FALSE(fr.is_full);
        CHECK(fr.achieved_rank == n);
        CHECK(fr.required_rank == n * n);
        CHECK(fr.complement.size() == n * n - n);
        const Mat& b = *fr.witness;
        Mat expect(n, n);
        expect(0, 1) = expect(1, 0) = 1.0;
        // a witness is determined up to sign
        const double err = std::min(frobenius_norm(b - expect), frobenius_norm(b + expect));
        CHECK(err < 1e-12);
        check_witness(fr, Mat::identity(n).columns());
    }
}

TEST_CASE("single vector is full") {
    for (std::size_t n = 1; n <= 4; ++n) {
        Vec v(n, 1.0 / std::sqrt(double(n)));
        const FullnessResult fr = fullness_test(std::vector<Vec>{v});
        CHECK(fr.is_full);
        CHECK(fr.span_rank == 1);
        CHECK(square_dim_bound_check(fr, 1));
    }
}

TEST_CASE("zero span is full") {
    const FullnessResult fr = fullness_test(Mat::zeros(3, 2));
    CHECK(fr.is_full);
    CHECK(fr.span_rank == 0);
}

TEST_CASE("random full sets of 9 vectors in C^3") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        const FullnessResult fr = fullness_test(rng.unit_columns(3, 9));
        CHECK(fr.is_full);
        CHECK(fr.span_rank == 3);
        CHECK(square_dim_bound_check(fr, 9));
    }
}

TEST_CASE("hermitian vectorization is an isometry") {
    Rng rng(43);
    for (int t = 0; t < 30; ++t) {
        const std::size_t r = 1 + rng.index(5);
        const Mat a = rng.hermitian(r), b = rng.hermitian(r);
        const auto va = hermitian_vectorize(a), vb = hermitian_vectorize(b);
        CHECK(va.size() == r * r);
        double ip = 0.0;
        for (std::size_t i = 0; i < va.size(); ++i) ip += va[i] * vb[i];
        cplx tr = 0;
        const Mat ab = a * b;
        for (std::size_t i = 0; i < r; ++i) tr += ab(i, i);
        CHECK(std::abs(ip - tr.real()) < 1e-10);
        CHECK(frobenius_norm(hermitian_devectorize(va, r) - a) < 1e-12);
    }
}

TEST_CASE("agreement with the brute-force null space") {
    Rng rng(45);
    for (int t = 0; t < 150; ++t) {
        const auto vs = gen::random_set(rng, 4, 10);
        const FullnessResult fr = fullness_test(vs);
        const std::size_t nullity = oracle::fullness_nullity(vs);
        CHECK(fr.is_full == (nullity == 0));
        // the complex null space is the complexification of the Hermitian one
        CHECK(nullity == 2 * (fr.required_rank - fr.achieved_rank));
        CHECK(fr.is_full == (fr.achieved_rank == fr.required_rank));
        if (fr.is_full) CHECK(vs.size() >= fr.required_rank);
        else check_witness(fr, vs);
    }
}

TEST_CASE("monotone under adding vectors in the span") {
    Rng rng(47);
    for (int t = 0; t < 30; ++t) {
        std::vector<Vec> vs = rng.unit_columns(2, 4 + rng.index(3)).columns();
        REQUIRE(fullness_test(vs).is_full);
        const Mat b0 = Mat::from_columns(vs);
        const Vec c = rng.gaussian_vector(vs.size());
        vs.push_back(b0 * std::span<const cplx>(c));
        CHECK(fullness_test(vs).is_full);
    }
}

TEST_CASE("transport under injective maps") {
    const auto [a, b] = transport_fullness(paper_set(), Mat::identity(2));
    CHECK(a.is_full == b.is_full);
    CHECK(a.achieved_rank == b.achieved_rank);

    Rng rng(49);
    for (int t = 0; t < 20; ++t) {
        const Mat tm = rng.gaussian_matrix(2, 2);
        CHECK(transport_fullness(paper_set(), tm).second.is_full);
        const std::vector<Vec> basis{{1, 0}, {0, 1}};
        CHECK_FALSE(transport_fullness(basis, tm).second.is_full);
    }
    for (int t = 0; t < 100; ++t) {
        const auto vs = gen::random_set(rng, 4, 10);
        const Mat tm = gen::injective_map(rng, vs[0].size());
        const auto [x, y] = transport_fullness(vs, tm);
        CHECK(x.is_full == y.is_full);
    }
    const std::vector<Vec> e{{1, 0}, {0, 1}};
    CHECK_THROWS_AS(transport_fullness(e, Mat{{1, 1}, {1, 1}}), Error);
    CHECK_THROWS_AS(transport_fullness(e, Mat::identity(3)), Error);
}
