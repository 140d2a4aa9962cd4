#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "schurlab/linalg.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

/// Outcome of the fullness test for {xi_1, ..., xi_n} in C^k.
///
/// The set is full when the only X with X = PXP and <X xi_j, xi_j> = 0 for all j
/// is zero. Splitting X into Hermitian and skew-Hermitian parts, that is the same
/// as the outer products eta_j eta_j* (coordinates in an orthonormal basis of
/// the span) spanning all r x r Hermitian matrices, a real space of dimension r^2.
struct FullnessResult {
    bool is_full = false;
    std::size_t span_rank = 0;
    std::size_t required_rank = 0;  // span_rank^2
    std::size_t achieved_rank = 0;
    /// Smallest retained singular value of the constraint map over the largest.
    double margin = 0.0;
    /// Hermitian, operator norm 1, supported on the span, killed by every vector state.
    std::optional<Mat> witness;
    /// One normalised witness per direction of the orthogonal complement, in
    /// decomposition order; witness is the one with the smallest singular value.
    std::vector<Mat> complement;
    Mat basis;  // k x r orthonormal basis of the span
    std::vector<double> singular_values;
};

FullnessResult fullness_test(std::span<const Vec> vectors, double rel_tol = kDefaultRelTol);
/// Columns of m as the vector set.
FullnessResult fullness_test(const Mat& columns, double rel_tol = kDefaultRelTol);

/// A full set of n vectors spans at most sqrt(n) dimensions.
bool square_dim_bound_check(const FullnessResult& result, std::size_t n);

/// Fullness of the set and of its image under T, which must be injective on the span.
std::pair<FullnessResult, FullnessResult> transport_fullness(std::span<const Vec> vectors,
                                                             const Mat& t,
                                                             double rel_tol = kDefaultRelTol);

/// Real isometric coordinates of an r x r Hermitian matrix: the diagonal, then
/// sqrt2 Re M_ij and sqrt2 Im M_ij for i < j in row-major order.
std::vector<double> hermitian_vectorize(const Mat& m);
Mat hermitian_devectorize(std::span<const double> v, std::size_t r);

struct WitnessDefects {
    double asymmetry = 0.0;      // ||B - B*||_F
    double norm_error = 0.0;     // | ||B|| - 1 |
    double support_error = 0.0;  // ||B - PBP||_F
    double max_state = 0.0;      // max_j |<B xi_j, xi_j>|
};

WitnessDefects witness_defects(const Mat& b, std::span<const Vec> vectors, const Mat& basis);

}  // namespace schurlab
