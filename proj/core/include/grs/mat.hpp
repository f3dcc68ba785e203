#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace grs {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when an iterative numeric routine fails to produce a result.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation needs a nonzero matrix (numerical rank >= 1).
struct DegenerateMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultRankTol = 1e-10;

/// Full singular value decomposition A = U diag(sigma) V^T together with a
/// relative-threshold numerical rank.
struct Svd {
    Mat u;              ///< n x n orthogonal; columns are the left singular vectors.
    Vec sigma;          ///< min(n,m) singular values, nonincreasing, nonnegative.
    Mat vt;             ///< m x m orthogonal, transposed right factor.
    Index rank = 0;     ///< count of sigma_i > tol_rank * sigma_1 (0 for the zero matrix).
    double tol_rank = kDefaultRankTol;

    /// Orthonormal basis of the image: the first `rank` columns of U.
    Mat image_basis() const { return u.leftCols(rank); }
};

/// Deterministic full SVD. Throws std::invalid_argument on non-finite input
/// and NumericError if the decomposition does not converge.
Svd svd(const Mat& a, double tol_rank = kDefaultRankTol);

/// sigma_rank, the smallest nonzero singular value; equals the inverse of the
/// spectral norm of the pseudoinverse. Throws DegenerateMatrixError at rank 0.
double smallest_nonzero_sv(const Svd& s);

/// Moore-Penrose pseudoinverse assembled from the decomposition. The
/// pseudoinverse of a zero matrix is the zero matrix of transposed shape.
Mat pinv(const Svd& s);

/// Perturbation factor for pseudoinverses of equal-image perturbed matrices:
/// 1 when rank = m = n, sqrt(2) when the matrix is full-rank rectangular,
/// (1+sqrt(5))/2 when rank deficient. Throws std::invalid_argument when
/// rank > min(n, m).
double pinv_perturbation_factor(Index rank, Index n, Index m);

/// Largest singular value.
double spectral_norm(const Mat& a);

inline double one_norm(const Vec& v) { return v.lpNorm<1>(); }
inline double two_norm(const Vec& v) { return v.norm(); }

}  // namespace grs
