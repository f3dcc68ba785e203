#include "grs/rng.hpp"

#include <cmath>

#include <Eigen/QR>

namespace grs {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 1)));
}

Vec sample_unit_sphere(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(dim);
    double norm = 0.0;
    do {
        for (Index i = 0; i < dim; ++i) v(i) = gauss(rng);
        norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
}

Vec sample_unit_ball(Index dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Vec dir = sample_unit_sphere(dim, rng);
    const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(dim));
    return radius * dir;
}

Vec sample_cross_polytope(Index dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // dim+1 exponential spacings normalized by their total give a point
    // uniform on {a_i >= 0, sum a_i <= 1}; random signs spread it over all
    // 2^dim orthants of the 1-norm ball.
    Vec spacing(dim + 1);
    for (Index i = 0; i <= dim; ++i) {
        double w;
        do {
            w = unif(rng);
        } while (w <= 0.0);
        spacing(i) = -std::log(w);
    }
    const double total = spacing.sum();
    Vec u(dim);
    for (Index i = 0; i < dim; ++i) {
        const double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
        u(i) = sign * spacing(i) / total;
    }
    return u;
}

Mat sample_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat a(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) a(i, j) = gauss(rng);
    }
    return a;
}

Mat random_orthonormal(Index n, std::mt19937_64& rng) {
    const Mat a = sample_gaussian(n, n, rng);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    }
    return q;
}

}  // namespace grs
