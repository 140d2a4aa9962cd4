#pragma once

#include <string>

#include "schurlab/linalg.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

/// Bracket on the Schur multiplier norm ||S_X||.
struct NormBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::string method_notes;
};

/// Entrywise (Schur / Hadamard) product.
Mat schur_product(const Mat& x, const Mat& y);

/// max_j ||X_j||_2
double column_norm(const Mat& x);

/// ||L||_c * ||R||_c, an upper bound on ||S_{L*R}||.
double factorization_upper_bound(const Mat& l, const Mat& r);

/// For PSD X the multiplier norm is attained on the diagonal.
double positive_multiplier_norm(const Mat& x, double tol = kDefaultTol);

/// max |X_ij|; S_X maps the matrix unit E_ij to X_ij E_ij.
double entry_lower_bound(const Mat& x);

/// Rank one with unimodular entries, i.e. X_lm = conj(L_l) R_m with |L_l| = |R_m| = 1.
bool rank_one_extremal_check(const Mat& x, double tol = kDefaultTol,
                             double rel_tol = kDefaultRelTol);

/// Cheap closed-form bracket: entry bound below, the trivial factorizations I*X
/// and X*I above, both values collapsed to max diag for PSD input.
NormBounds cheap_bounds(const Mat& x, double tol = kDefaultTol);

}  // namespace schurlab
