#include "grs/gvs.hpp"

#include <cmath>
#include <numbers>

#include "grs/rng.hpp"

namespace grs {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kImageTol = 1e-9;
constexpr double kDenominatorTol = 1e-14;

double image_residual(const Mat& basis, const Vec& v) {
    return (v - basis * (basis.transpose() * v)).norm();
}

}  // namespace

void validate(const DynamicsSnapshot& snap) {
    if (snap.g0.size() == 0) {
        throw std::invalid_argument("snapshot: g0 is empty");
    }
    if (!snap.f0.allFinite() || !snap.g0.allFinite()) {
        throw std::invalid_argument("snapshot: non-finite entries");
    }
    if (snap.f0.size() != snap.g0.rows()) {
        throw std::invalid_argument("snapshot: f0 length does not match g0 rows");
    }
    if (!(snap.lf > 0.0) || !(snap.lg > 0.0)) {
        throw std::invalid_argument("snapshot: Lipschitz bounds must be strictly positive");
    }
    if (snap.g0.cwiseAbs().maxCoeff() == 0.0) {
        throw std::invalid_argument("snapshot: g0 must be nonzero");
    }
}

GvsGeometry geometry(const DynamicsSnapshot& snap, double tol_rank) {
    validate(snap);
    GvsGeometry geom;
    geom.svd = svd(snap.g0, tol_rank);
    if (geom.svd.rank < 1) {
        throw DegenerateMatrixError("geometry: g0 is numerically zero");
    }
    geom.pinv = pinv(geom.svd);
    geom.rank = geom.svd.rank;
    geom.sigma_r = smallest_nonzero_sv(geom.svd);
    geom.mu = pinv_perturbation_factor(geom.rank, snap.n(), snap.m());
    geom.image_radius = geom.sigma_r / snap.lg;
    geom.validity_radius = geom.sigma_r / (snap.lf + snap.lg);
    return geom;
}

double ball_radius(const GvsGeometry& geom, const DynamicsSnapshot& snap, double x_norm) {
    if (x_norm < 0.0) {
        throw std::invalid_argument("ball_radius: x_norm must be nonnegative");
    }
    // Exactly zero from the validity radius on; the formula alone can leave a
    // one-ulp residue there.
    if (x_norm >= geom.validity_radius) return 0.0;
    return std::max(0.0, geom.sigma_r - (snap.lf + snap.lg) * x_norm);
}

double direction_gain(const GvsGeometry& geom, const DynamicsSnapshot& snap, double x_norm,
                      const Vec& d, bool* degenerate_denominator) {
    if (degenerate_denominator != nullptr) *degenerate_denominator = false;
    if (x_norm < 0.0) {
        throw std::invalid_argument("direction_gain: x_norm must be nonnegative");
    }
    if (d.size() != snap.n()) {
        throw std::invalid_argument("direction_gain: d has wrong dimension");
    }
    if (std::abs(d.norm() - 1.0) > kUnitTol) {
        throw std::invalid_argument("direction_gain: d must be a unit vector");
    }
    if (image_residual(geom.image_basis(), d) > kImageTol) {
        throw std::invalid_argument("direction_gain: d must lie in the image of g0");
    }

    if (x_norm >= geom.validity_radius) return 0.0;
    const double numerator = geom.sigma_r - (snap.lg + snap.lf) * x_norm;
    if (numerator <= 0.0) return 0.0;

    const double pinv_d = (geom.pinv * d).norm();
    const double pinv_norm = 1.0 / geom.sigma_r;
    const double denominator =
        pinv_d * (geom.sigma_r - snap.lg * x_norm) + geom.mu * pinv_norm * snap.lg * x_norm;
    if (denominator <= kDenominatorTol) {
        if (degenerate_denominator != nullptr) *degenerate_denominator = true;
        return 0.0;
    }
    return numerator / denominator;
}

Vec axis_gains(const GvsGeometry& geom, const DynamicsSnapshot& snap, double s) {
    if (s < 0.0) {
        throw std::invalid_argument("axis_gains: s must be nonnegative");
    }
    Vec gains = Vec::Zero(snap.n());
    if (s >= geom.validity_radius) return gains;
    const double g = geom.sigma_r - (snap.lg + snap.lf) * s;
    if (g <= 0.0) return gains;

    const double alpha = geom.sigma_r - snap.lg * s;
    const double beta = geom.mu * (1.0 / geom.sigma_r) * snap.lg * s;
    for (Index i = 0; i < geom.rank; ++i) {
        // ||g0^+ eta_i|| = 1/sigma_i for a left singular vector eta_i.
        const double denominator = alpha / geom.svd.sigma(i) + beta;
        double gain = g;
        if (denominator > kDenominatorTol) {
            gain = std::max(gain, g / denominator);
        }
        gains(i) = std::max(gain, 0.0);
    }
    return gains;
}

BoundaryPolylines boundary_polyline(const GvsGeometry& geom, const DynamicsSnapshot& snap,
                                    double x_norm, const Vec& plane_u, const Vec& plane_v,
                                    int segments) {
    if (segments < 8) {
        throw std::invalid_argument("boundary_polyline: segments must be at least 8");
    }
    if (plane_u.size() != snap.n() || plane_v.size() != snap.n()) {
        throw std::invalid_argument("boundary_polyline: plane vectors have wrong dimension");
    }
    if (std::abs(plane_u.norm() - 1.0) > kUnitTol || std::abs(plane_v.norm() - 1.0) > kUnitTol ||
        std::abs(plane_u.dot(plane_v)) > kUnitTol) {
        throw std::invalid_argument("boundary_polyline: plane vectors must be orthonormal");
    }
    const Mat basis = geom.image_basis();
    if (image_residual(basis, plane_u) > kImageTol || image_residual(basis, plane_v) > kImageTol) {
        throw std::invalid_argument("boundary_polyline: plane vectors must lie in the image of g0");
    }

    BoundaryPolylines lines;
    if (x_norm > geom.validity_radius) return lines;

    const double radius = ball_radius(geom, snap, x_norm);
    const Eigen::Vector2d center(snap.f0.dot(plane_u), snap.f0.dot(plane_v));
    lines.theta.reserve(segments);
    lines.ball.reserve(segments);
    lines.advanced.reserve(segments);
    for (int k = 0; k < segments; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / segments;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Vec d = c * plane_u + s * plane_v;
        d.normalize();
        const double gain = direction_gain(geom, snap, x_norm, d);
        lines.theta.push_back(theta);
        lines.ball.emplace_back(center.x() + radius * c, center.y() + radius * s);
        lines.advanced.emplace_back(center.x() + gain * c, center.y() + gain * s);
    }
    return lines;
}

ConsistentSample sample_consistent(const DynamicsSnapshot& snap, const GvsGeometry& geom,
                                   const Vec& x, std::mt19937_64& rng) {
    if (x.size() != snap.n()) {
        throw std::invalid_argument("sample_consistent: x has wrong dimension");
    }
    const double x_norm = x.norm();
    if (!(x_norm < geom.image_radius)) {
        throw std::invalid_argument("sample_consistent: |x| must be below the image radius");
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Mat basis = geom.image_basis();

    ConsistentSample out;
    out.x = x;

    const Vec w = sample_unit_sphere(geom.rank, rng);
    const double theta_f = unif(rng);
    out.f_hat = snap.f0 + (snap.lf * x_norm * theta_f) * (basis * w);

    Mat perturbation;
    double norm = 0.0;
    do {
        perturbation = basis * sample_gaussian(geom.rank, snap.m(), rng);
        norm = spectral_norm(perturbation);
    } while (norm < 1e-12);
    const double theta_g = unif(rng);
    out.g_hat = snap.g0 + (snap.lg * x_norm * theta_g / norm) * perturbation;
    return out;
}

ConsistentSample sample_consistent(const DynamicsSnapshot& snap, const GvsGeometry& geom,
                                   const Vec& x, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    return sample_consistent(snap, geom, x, rng);
}

bool admits_velocity(const ConsistentSample& sample, const Vec& v) {
    const Vec offset = v - sample.f_hat;
    const Svd dec = svd(sample.g_hat);
    if (dec.rank == 0) {
        return offset.norm() <= 1e-7 * std::max(1.0, v.norm());
    }
    const Mat basis = dec.image_basis();
    const double residual = image_residual(basis, offset);
    if (residual > 1e-7 * std::max(1.0, v.norm())) return false;
    const Vec u = pinv(dec) * offset;
    return u.norm() <= 1.0 + 1e-9;
}

}  // namespace grs
