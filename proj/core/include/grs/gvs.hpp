#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "grs/mat.hpp"

namespace grs {

/// Everything that is known about an otherwise unknown control-affine system
/// dx/dt = f(x) + G(x) u, |u| <= 1: the local dynamics sampled at the origin
/// and Lipschitz bounds on how fast the dynamics can change with the state.
struct DynamicsSnapshot {
    Vec f0;          ///< drift f(0).
    Mat g0;          ///< input matrix G(0); must be nonzero.
    double lf = 0.0; ///< Lipschitz bound of f, strictly positive.
    double lg = 0.0; ///< Lipschitz bound of G, strictly positive.

    Index n() const { return g0.rows(); }
    Index m() const { return g0.cols(); }
};

/// Throws std::invalid_argument when a snapshot violates its invariants
/// (non-finite data, zero G(0), nonpositive Lipschitz bounds, shape mismatch).
void validate(const DynamicsSnapshot& snap);

/// Spectral quantities of G(0) that every velocity-set bound consumes.
struct GvsGeometry {
    Svd svd;                      ///< of g0.
    Mat pinv;                     ///< g0^+.
    double sigma_r = 0.0;         ///< smallest nonzero singular value; equals 1/||g0^+||.
    double mu = 0.0;              ///< pseudoinverse perturbation factor of g0's shape/rank.
    Index rank = 0;
    double image_radius = 0.0;    ///< sigma_r / lg; below this state norm the image of G(x) cannot tilt out of Im(G(0)).
    double validity_radius = 0.0; ///< sigma_r / (lf + lg); below this state norm the velocity sets are nondegenerate.

    Mat image_basis() const { return svd.image_basis(); }
};

GvsGeometry geometry(const DynamicsSnapshot& snap, double tol_rank = kDefaultRankTol);

/// Radius of the guaranteed velocity ball about f(0) at state norm x_norm:
/// max(0, sigma_r - (lf + lg) * x_norm). Reaches 0 exactly at the validity
/// radius and stays 0 beyond it, so the set degenerates continuously to
/// {f(0)}.
double ball_radius(const GvsGeometry& geom, const DynamicsSnapshot& snap, double x_norm);

/// Largest guaranteed gain along the unit direction d in Im(G(0)); every
/// velocity f(0) + k*d with 0 <= k <= direction_gain is achievable by all
/// systems consistent with the snapshot. Clamped at 0 beyond the validity
/// radius. If the denominator of the bound degenerates, 0 is returned and
/// *degenerate_denominator (when given) is set.
double direction_gain(const GvsGeometry& geom, const DynamicsSnapshot& snap, double x_norm,
                      const Vec& d, bool* degenerate_denominator = nullptr);

/// Guaranteed gains along the left singular directions of G(0) at state norm
/// s: entry i is the distance from f(0) to the velocity-set boundary along
/// singular vector eta_i (0 for i >= rank and for s at or beyond the validity
/// radius). These are the diagonal gains of the polygon surrogate.
Vec axis_gains(const GvsGeometry& geom, const DynamicsSnapshot& snap, double s);

/// Planar boundary samples of the two velocity-set underapproximations,
/// expressed in the coordinates of an orthonormal plane inside Im(G(0)).
struct BoundaryPolylines {
    std::vector<double> theta;               ///< sample angles in [0, 2*pi).
    std::vector<Eigen::Vector2d> ball;       ///< circle of ball_radius about the projected f(0).
    std::vector<Eigen::Vector2d> advanced;   ///< direction_gain sweep about the projected f(0).
};

/// Samples both boundaries at `segments` uniformly spaced angles. plane_u and
/// plane_v must be orthonormal and lie in Im(G(0)). Returns empty polylines
/// when x_norm exceeds the validity radius.
BoundaryPolylines boundary_polyline(const GvsGeometry& geom, const DynamicsSnapshot& snap,
                                    double x_norm, const Vec& plane_u, const Vec& plane_v,
                                    int segments);

/// One member of the family of dynamics consistent with a snapshot, evaluated
/// at state x: a drift within lf*|x| of f(0) and an input matrix within
/// lg*|x| of G(0) whose columns stay inside Im(G(0)).
struct ConsistentSample {
    Vec f_hat;
    Mat g_hat;
    Vec x;
};

/// Draws a random consistent-dynamics sample at x. Requires |x| below the
/// image radius so that the sampled input matrix keeps full snapshot rank.
ConsistentSample sample_consistent(const DynamicsSnapshot& snap, const GvsGeometry& geom,
                                   const Vec& x, std::mt19937_64& rng);
ConsistentSample sample_consistent(const DynamicsSnapshot& snap, const GvsGeometry& geom,
                                   const Vec& x, std::uint64_t seed);

/// True when the sampled system can realize velocity v at its state: v-f_hat
/// lies in Im(g_hat) (residual below 1e-7 * max(1, |v|)) and the minimum-norm
/// input g_hat^+ (v - f_hat) has norm at most 1 + 1e-9.
bool admits_velocity(const ConsistentSample& sample, const Vec& v);

}  // namespace grs
