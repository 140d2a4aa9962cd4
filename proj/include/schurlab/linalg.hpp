#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "schurlab/matrix.hpp"

namespace schurlab {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultRelTol = 1e-9;

struct HermEig {
    std::vector<double> eigenvalues;  // ascending
    Mat eigenvectors;                 // columns orthonormal
};

/// Thin SVD with a complete right basis: A * V = U * diag(sigma) on the
/// retained part, sigma sorted descending, V square (cols(A) x cols(A)).
/// U holds one column per strictly positive singular value.
struct Svd {
    std::vector<double> sigma;
    Mat U;
    Mat V;
};

struct SpanBasis {
    Mat basis;  // k x r, orthonormal columns
    std::size_t rank = 0;
    std::vector<double> singular_values;  // descending
    double tol_used = 0.0;
};

struct PsdCheck {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
};

/// Cyclic Jacobi diagonalisation of a Hermitian matrix. The input is
/// symmetrised before rotating; asymmetry beyond tol*max(1,||H||_F) throws.
HermEig herm_eig(const Mat& h, double tol = kDefaultTol);

/// One-sided (Hestenes) Jacobi. Singular values are accurate to roughly
/// eps*||A|| absolutely, so rank decisions at rel_tol 1e-9 are reliable.
Svd svd(const Mat& a);

/// Largest singular value.
double op_norm(const Mat& a);

std::size_t rank_of(const Mat& x, double rel_tol = kDefaultRelTol);

SpanBasis span_basis(std::span<const Vec> vectors, double rel_tol = kDefaultRelTol);
SpanBasis span_basis(const Mat& columns, double rel_tol = kDefaultRelTol);

PsdCheck psd_check(const Mat& x, double tol = kDefaultTol);

/// Hermitian PSD square root. Eigenvalues in [-tol*s, rel_tol*lambda_max] are
/// set to zero (s = max(1,||X||_F)), below that NotPSD is thrown.
Mat psd_sqrt(const Mat& x, double tol = kDefaultTol, double rel_tol = kDefaultRelTol);

struct Polar {
    Mat W;  // partial isometry, initial space = range(F)
    Mat F;  // (A*A)^{1/2}
};

/// A = W F.
Polar polar(const Mat& a, double rel_tol = kDefaultRelTol);

/// Orthogonal projection onto the span of the columns of q (q orthonormal).
Mat projector(const Mat& q);

}  // namespace schurlab
