#pragma once

#include <cstdint>
#include <string>

#include "schurlab/linalg.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

/// X = L* R with L r x m, R r x n.
struct SchurFactorization {
    Mat L;
    Mat R;
    double value = 0.0;     // ||L||_c ||R||_c
    double residual = 0.0;  // ||X - L* R||_F
};

struct NormOptions {
    int starts = 50;  // ascent restarts
    std::uint64_t seed = 0;
    int ascent_iterations = 1000;
    int max_bisection_steps = 200;
    int max_sweeps = 5000;        // alternating projection sweeps per bisection step
    double feasibility_tol = 1e-10;
    double stall_decrease = 1e-12;  // relative decrease over stall_window sweeps
    int stall_window = 200;
    /// Seed the bracket with the factorization read off the ascent's stationary point.
    bool stationary_seed = true;
    double tol = kDefaultTol;
    double rel_tol = kDefaultRelTol;
};

struct NormResult {
    double upper = 0.0;
    double lower = 0.0;
    double eps_target = 0.0;
    SchurFactorization factorization;
    int iterations = 0;  // bisection steps
    bool precision_reached = false;
    std::string upper_source;
    std::string lower_source;
};

/// Builds the factorization record (value and residual) for X = L* R.
SchurFactorization make_factorization(Mat l, Mat r, const Mat& x);

/// Rescales L and R so that ||L||_c = ||R||_c; the product is unchanged.
SchurFactorization balance(SchurFactorization f);

/// Appends rows to L and R so that L* R reproduces X up to roundoff. Each
/// column norm grows by at most the spectral norm of the old residual.
SchurFactorization correct_residual(SchurFactorization f, const Mat& x);

/// Gram-factors a PSD block [[A, X], [X*, B]] (A is m x m) as C* C and splits C.
SchurFactorization extract_factorization(const Mat& block, std::size_t m, double t,
                                         double tol = kDefaultTol);

struct AscentResult {
    double value = 0.0;
    Vec u;  // unit vector in C^m
    Vec v;  // unit vector in C^n
    Mat Y;  // contraction attaining value = ||X o Y|| / ||Y||
};

/// Lower bound on ||S_X|| by alternating maximisation over unit u, v and
/// contractions Y from seeded random starts.
AscentResult ascent(const Mat& x, int starts, std::uint64_t seed, int max_iterations = 1000);
double ascent_lower_bound(const Mat& x, int starts, std::uint64_t seed);

/// Exact factorization built at a stationary point (u, v) of the ascent. It
/// divides by u and v, so eps regularises vanishing coordinates.
SchurFactorization stationary_factorization(const Mat& x, const Vec& u, const Vec& v, double eps);

/// Restricts a factorization to the joint row space, giving rank_of(X) rows.
SchurFactorization compress_to_rank(const SchurFactorization& f, const Mat& x,
                                    double rel_tol = kDefaultRelTol);

/// ||S_X|| to precision eps, with a certified bracket and an explicit
/// factorization attaining the upper end. precision_reached is false when the
/// iteration caps are hit before upper - lower <= eps.
NormResult multiplier_norm(const Mat& x, double eps, const NormOptions& opts = {});

}  // namespace schurlab
