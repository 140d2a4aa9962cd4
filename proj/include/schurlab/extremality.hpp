#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schurlab/fullness.hpp"
#include "schurlab/linalg.hpp"
#include "schurlab/matrix.hpp"
#include "schurlab/multiplier_norm.hpp"

namespace schurlab {

enum class Verdict { Extremal, NotExtremal, NecessaryConditionsPass, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

/// X = (1 - alpha) Y + alpha Z.
struct ConvexSplit {
    double alpha = 0.5;
    Mat Y;
    Mat Z;
    double reconstruction_residual = 0.0;  // Frobenius
    double distinctness = 0.0;             // ||Y - X||_F
    /// For splits in the general unit ball: factorizations certifying ||S_Y||, ||S_Z||.
    std::optional<SchurFactorization> y_factor;
    std::optional<SchurFactorization> z_factor;
};

struct ShortColumn {
    char factor = 'R';  // 'L' or 'R'
    std::size_t index = 0;
    double norm = 0.0;
};

struct ExtremalityReport {
    Verdict verdict = Verdict::Inconclusive;
    FullnessResult fullness;
    std::size_t rank = 0;
    double rank_bound = 0.0;  // sqrt(n) or sqrt(m + n)
    bool rank_bound_holds = true;
    std::optional<ConvexSplit> split;
    double margin = 0.0;
    /// Columns of F of norm one (positive case); all indices for Q_n.
    std::vector<std::size_t> unit_indices;
    /// General case: the factorization the verdict refers to.
    std::optional<SchurFactorization> factorization;
    bool unit_columns = true;
    std::optional<ShortColumn> short_column;
    double scale = 1.0;
    bool relative_to_factorization = false;
    std::string notes;
};

struct ExtremalityOptions {
    double tol = kDefaultTol;
    double rel_tol = kDefaultRelTol;
    double audit_margin = 1e-7;        // fullness margin below this is Inconclusive
    double unit_tol = 1e-7;            // | ||F_j|| - 1 |
    double distinctness_floor = 1e-6;
    double norm_slack = 1e-6;          // ||S_Y|| <= 1 + norm_slack for general splits
    double eps = 1e-6;                 // multiplier norm precision
    bool normalize = false;            // general case: rescale X to norm 1 first
    NormOptions norm;
};

bool q_membership(const Mat& x, double tol = kDefaultTol);

/// X in Q_n is extremal iff its columns form a full set.
ExtremalityReport q_extremality(const Mat& x, const ExtremalityOptions& opts = {});

/// Midpoint split Y = F(I+B)F, Z = F(I-B)F, F = X^{1/2}, B a fullness witness
/// for the columns of F.
ConvexSplit q_decompose(const Mat& x, const ExtremalityOptions& opts = {});

/// Necessary condition for extremality among positive multipliers of norm <= 1:
/// the unit columns of X^{1/2} are full.
ExtremalityReport positive_extremality_necessary(const Mat& x, const ExtremalityOptions& opts = {});

/// If X in Q_n is a proper convex combination of Y and Z in the unit ball of
/// Schur multipliers, both lie in Q_n.
bool q_face_check(const Mat& x, double alpha, const Mat& y, const Mat& z,
                  const ExtremalityOptions& opts = {});

/// Necessary conditions for X of multiplier norm one to be extremal in the unit ball:
/// unit columns, fullness of all columns of a Schur factorization, rank <= sqrt(m+n).
ExtremalityReport general_necessary_conditions(const Mat& x, const ExtremalityOptions& opts = {});

/// X = L* R with unit columns and witness B: Y = A* G, Z = C* H, with
/// A, G = (I+B)^{1/2} L, R and C, H = (I-B)^{1/2} L, R.
ConvexSplit general_decompose_from_witness(const Mat& l, const Mat& r, const Mat& b,
                                           double tol = 1e-7);

struct FvgFactorization {
    Mat F;  // m x m positive, F^2 in Q_m
    Mat V;  // m x n partial isometry range(G) -> range(F)
    Mat G;  // n x n positive, G^2 in Q_n
    double residual = 0.0;
};

FvgFactorization fvg_factorization(const Mat& x, const ExtremalityOptions& opts = {});
/// From a factorization X = L* R whose columns are all unit vectors.
FvgFactorization fvg_from_factorization(const Mat& l, const Mat& r, const Mat& x,
                                        double tol = 1e-7);

/// rank(X)/sqrt(n): lower bound on the number of extremal points in any convex
/// decomposition of X in Q_n.
double corollary_decomposition_bound(const Mat& x, const ExtremalityOptions& opts = {});

/// Random r x n unit-column L with full columns, returned as X = L* L with its report.
std::vector<std::pair<Mat, ExtremalityReport>> generate_extremal_q(
    std::size_t n, std::size_t r, std::size_t trials, std::uint64_t seed,
    const ExtremalityOptions& opts = {});

/// Appends unit columns to a full L spanning C^r and tests L^* L^ in Q_{n+k}.
std::pair<Mat, ExtremalityReport> extend_columns(const Mat& l, std::span<const Vec> extra,
                                                 const ExtremalityOptions& opts = {});

struct SplitCheck {
    bool ok = false;
    double residual = 0.0;
    double distinctness = 0.0;
    bool y_member = false;
    bool z_member = false;
};

/// Reconstruction <= 1e-9, distinctness >= 1e-6, Y and Z in Q_n within tol.
SplitCheck validate_q_split(const Mat& x, const ConvexSplit& s, double tol = 1e-9);
/// Y, Z PSD with diagonal at most 1 + tol.
SplitCheck validate_positive_split(const Mat& x, const ConvexSplit& s, double tol = 1e-9);
/// Y, Z certified in the unit ball (1 + 1e-6) by their stored factorizations.
SplitCheck validate_general_split(const Mat& x, const ConvexSplit& s, double norm_slack = 1e-6);

}  // namespace schurlab
