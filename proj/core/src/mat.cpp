#include "grs/mat.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace grs {

Svd svd(const Mat& a, double tol_rank) {
    if (!a.allFinite()) {
        throw std::invalid_argument("svd: input has non-finite entries");
    }
    if (tol_rank < 0.0) {
        throw std::invalid_argument("svd: tol_rank must be nonnegative");
    }
    Eigen::JacobiSVD<Mat> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) {
        throw NumericError("svd: Jacobi iteration did not converge");
    }
    Svd out;
    out.u = dec.matrixU();
    out.sigma = dec.singularValues();
    out.vt = dec.matrixV().transpose();
    out.tol_rank = tol_rank;
    out.rank = 0;
    const double s1 = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
    if (s1 > 0.0) {
        for (Index i = 0; i < out.sigma.size(); ++i) {
            if (out.sigma(i) > tol_rank * s1) ++out.rank;
        }
    }
    return out;
}

double smallest_nonzero_sv(const Svd& s) {
    if (s.rank < 1) {
        throw DegenerateMatrixError("smallest_nonzero_sv: matrix has rank 0");
    }
    return s.sigma(s.rank - 1);
}

Mat pinv(const Svd& s) {
    const Index n = s.u.rows();
    const Index m = s.vt.rows();
    Mat out = Mat::Zero(m, n);
    for (Index i = 0; i < s.rank; ++i) {
        out.noalias() += s.vt.row(i).transpose() * (1.0 / s.sigma(i)) * s.u.col(i).transpose();
    }
    return out;
}

double pinv_perturbation_factor(Index rank, Index n, Index m) {
    const Index min_dim = std::min(n, m);
    if (rank < 0 || rank > min_dim) {
        throw std::invalid_argument("pinv_perturbation_factor: rank exceeds min(n, m)");
    }
    if (rank == m && rank == n) return 1.0;
    if (rank == min_dim) return std::sqrt(2.0);
    return (1.0 + std::sqrt(5.0)) / 2.0;
}

double spectral_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return svd(a).sigma(0);
}

}  // namespace grs
