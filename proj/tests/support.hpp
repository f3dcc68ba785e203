#pragma once

// Shared generators and independent geometry oracles for the test suites.
// Everything here is deliberately decoupled from the library's own hull and
// membership code paths so it can serve as a cross-check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "grs/gvs.hpp"
#include "grs/rng.hpp"

namespace grs::test {

/// Random snapshot with n, m <= max_dim. Roughly a third of the draws are
/// rank-deficient (built as a product through a thin inner dimension).
inline DynamicsSnapshot random_snapshot(std::mt19937_64& rng, int max_dim = 3) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_real_distribution<double> lipschitz(0.1, 2.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    DynamicsSnapshot snap;
    const Index n = dim(rng);
    const Index m = dim(rng);
    Mat g0;
    do {
        g0 = sample_gaussian(n, m, rng);
        const Index min_dim = std::min(n, m);
        if (min_dim > 1 && unif(rng) < 0.3) {
            std::uniform_int_distribution<int> inner(1, static_cast<int>(min_dim) - 1);
            const Index k = inner(rng);
            g0 = sample_gaussian(n, k, rng) * sample_gaussian(k, m, rng);
        }
    } while (g0.cwiseAbs().maxCoeff() < 1e-6);
    snap.g0 = g0;
    snap.f0 = sample_gaussian(n, 1, rng);
    snap.lf = lipschitz(rng);
    snap.lg = lipschitz(rng);
    return snap;
}

/// Unit direction inside the image of the snapshot's input matrix.
inline Vec random_image_direction(const GvsGeometry& geom, std::mt19937_64& rng) {
    return Vec(geom.image_basis() * sample_unit_sphere(geom.rank, rng));
}

/// Point-in-convex-polygon by cross-product signs; independent of the
/// library's hull utilities.
inline bool oracle_point_in_polygon(const std::vector<Eigen::Vector2d>& poly,
                                    const Eigen::Vector2d& p, double tol = 1e-12) {
    if (poly.size() == 1) return (p - poly[0]).norm() <= tol;
    if (poly.size() == 2) {
        const Eigen::Vector2d ab = poly[1] - poly[0];
        const double len = ab.norm();
        if (len == 0.0) return (p - poly[0]).norm() <= tol;
        const double cross =
            ab.x() * (p.y() - poly[0].y()) - ab.y() * (p.x() - poly[0].x());
        const double along = (p - poly[0]).dot(ab) / (len * len);
        return std::abs(cross) / len <= tol && along >= -tol && along <= 1.0 + tol;
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
        const Eigen::Vector2d e = b - a;
        const double cross = e.x() * (p.y() - a.y()) - e.y() * (p.x() - a.x());
        if (cross < -tol * std::max(1.0, e.norm())) return false;
    }
    return true;
}

inline double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
        twice += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * twice;
}

inline double point_to_polygon_distance(const std::vector<Eigen::Vector2d>& poly,
                                        const Eigen::Vector2d& p) {
    if (oracle_point_in_polygon(poly, p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return (p - poly[0]).norm();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
        const Eigen::Vector2d ab = b - a;
        const double len2 = ab.squaredNorm();
        const double s = len2 == 0.0 ? 0.0 : std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
        best = std::min(best, (p - (a + s * ab)).norm());
    }
    return best;
}

/// Hausdorff distance between two convex polygons (vertex-attained for convex
/// sets).
inline double hausdorff(const std::vector<Eigen::Vector2d>& a,
                        const std::vector<Eigen::Vector2d>& b) {
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, point_to_polygon_distance(b, p));
    for (const auto& p : b) h = std::max(h, point_to_polygon_distance(a, p));
    return h;
}

/// Largest projection of the polygon onto a unit direction.
inline double extent_along(const std::vector<Eigen::Vector2d>& poly,
                           const Eigen::Vector2d& dir) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : poly) best = std::max(best, p.dot(dir));
    return best;
}

}  // namespace grs::test
