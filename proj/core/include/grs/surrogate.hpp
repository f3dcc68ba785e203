#pragma once

#include <cstdint>
#include <random>

#include "grs/gvs.hpp"
#include "grs/trajectory.hpp"

namespace grs {

enum class SurrogateKind { Ball, Polygon };

const char* to_string(SurrogateKind kind);

/// A fully known control system whose trajectories are guaranteed to be
/// trajectories of every system consistent with the snapshot. The Ball kind
/// moves at the guaranteed ball rate in any image direction; the Polygon kind
/// moves inside the convex hull of the guaranteed gains along the singular
/// directions of G(0). Both reduce to the pure drift f(0) once the state norm
/// reaches the validity radius, so they are defined on all of R^n.
struct SurrogateSystem {
    SurrogateKind kind = SurrogateKind::Ball;
    DynamicsSnapshot snap;
    GvsGeometry geom;
};

SurrogateSystem make_surrogate(SurrogateKind kind, const DynamicsSnapshot& snap,
                               double tol_rank = kDefaultRankTol);

/// Kind-matched input coefficients. Ball: a state-space vector in Im(G(0))
/// with 2-norm at most 1. Polygon: a coefficient vector on the singular
/// directions with 1-norm at most 1, supported on the first `rank` entries.
struct AdmissibleInput {
    SurrogateKind kind = SurrogateKind::Ball;
    Vec u;
};

/// Velocity of the surrogate at state x under input u. Throws
/// std::invalid_argument when u is not admissible for the system's kind.
Vec velocity(const SurrogateSystem& sys, const Vec& x, const AdmissibleInput& u);

/// Uniform draw from the kind's admissible input set: the unit ball of the
/// input image (Ball) or the unit cross-polytope of the first `rank` singular
/// coefficients (Polygon).
AdmissibleInput sample_input(const SurrogateSystem& sys, std::mt19937_64& rng);
AdmissibleInput sample_input(const SurrogateSystem& sys, std::uint64_t seed);

struct SteerResult {
    bool reached = false;
    double time = 0.0;        ///< first time the target was hit, or the horizon.
    Trajectory trajectory;
};

/// Drives the surrogate from `x0` (zeros when empty) toward `target` by
/// picking, at every step, the admissible input with the largest velocity
/// component toward the remaining offset. Reaching the target (within
/// 1e-3 * max(1, |target|)) certifies it as guaranteed reachable by time
/// `horizon`; not reaching it proves nothing.
SteerResult greedy_steer(const SurrogateSystem& sys, const Vec& target, double horizon,
                         double dt, const Vec& x0 = Vec());

namespace detail {
/// Velocity map without admissibility checks; callers guarantee u is
/// admissible for the kind.
Vec surrogate_velocity(const SurrogateSystem& sys, const Vec& x, const Vec& u);
}

}  // namespace grs
