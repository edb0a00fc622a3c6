#pragma once

#include <Eigen/Dense>

#include "opsym/rational.hpp"

namespace opsym {

/// Rank tolerance used everywhere a numeric rank decision is made, relative to
/// the largest singular value.
inline constexpr double kDefaultRankTol = 1e-8;

/// Angle (radians) below which two directions/subspaces are considered equal.
inline constexpr double kSubspaceEqualAngle = 1e-6;

struct SvdResult {
    Eigen::MatrixXd u;           // rows × rank-extent orthonormal columns
    Eigen::VectorXd sigma;       // descending, padded with zeros to cols entries
    Eigen::MatrixXd v;           // cols × cols orthonormal
};

/// Full SVD with σ padded to cols entries (σ_i = 0 for i ≥ min(rows, cols)),
/// so sigma(cols-1) is the injectivity margin of the matrix as a map on ℝ^cols.
SvdResult svd(const Eigen::MatrixXd& m);

/// Moore–Penrose pseudoinverse; singular values ≤ tol·σ_max are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double tol = kDefaultRankTol);

/// Smallest singular value of m seen as a map ℝ^cols → ℝ^rows (0 when cols > rows).
double min_singular_value(const Eigen::MatrixXd& m);

/// Orthonormal-basis subspace of ℝ^ambient. dim == basis.cols().
struct Subspace {
    int ambient = 0;
    Eigen::MatrixXd basis;  // ambient × dim, orthonormal columns
    double tol = kDefaultRankTol;

    int dim() const { return static_cast<int>(basis.cols()); }

    static Subspace full(int ambient, double tol = kDefaultRankTol);
    static Subspace zero(int ambient, double tol = kDefaultRankTol);

    /// Largest principal angle between v and the subspace (π/2 for the zero space).
    double angle_to(const Eigen::VectorXd& v) const;
    bool contains(const Eigen::VectorXd& v, double angle_tol = kSubspaceEqualAngle) const;
};

Subspace image(const Eigen::MatrixXd& m, double tol = kDefaultRankTol);
Subspace kernel(const Eigen::MatrixXd& m, double tol = kDefaultRankTol);

/// Numeric subspace intersection via principal angles: directions whose
/// principal cosine is ≥ 1 − tol are kept.
Subspace intersect(const Subspace& s1, const Subspace& s2);

/// Max over both mutual principal angles; 0 iff the subspaces are equal.
double subspace_angle(const Subspace& s1, const Subspace& s2);
bool subspace_equal(const Subspace& s1, const Subspace& s2,
                    double angle_tol = kSubspaceEqualAngle);

// ---- exact-rational linear algebra -------------------------------------

/// Exact rank by fraction-free (Bareiss) elimination on the cleared-denominator
/// integer matrix.
int exact_rank(const RationalMatrix& m);

/// Exact kernel basis (columns), via Gauss–Jordan over ℚ. May have 0 columns.
RationalMatrix exact_kernel(const RationalMatrix& m);

/// Linearly independent spanning columns of the column space.
RationalMatrix exact_column_space(const RationalMatrix& m);

/// Exact intersection of two column spans in the same ambient space.
RationalMatrix exact_intersect(const RationalMatrix& basis1, const RationalMatrix& basis2);

/// True when v lies in span(basis), exactly.
bool exact_contains(const RationalMatrix& basis, const RationalVector& v);

/// Casts an exact basis to doubles and orthonormalizes it.
Subspace to_numeric_subspace(const RationalMatrix& basis, int ambient,
                             double tol = kDefaultRankTol);

}  // namespace opsym
