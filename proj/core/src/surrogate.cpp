#include "grs/surrogate.hpp"

#include <cmath>

#include "grs/rng.hpp"

namespace grs {

namespace {

constexpr double kNormSlack = 1e-12;
constexpr double kImageTol = 1e-9;

void check_admissible(const SurrogateSystem& sys, const AdmissibleInput& input) {
    if (input.kind != sys.kind) {
        throw std::invalid_argument("velocity: input kind does not match system kind");
    }
    if (input.u.size() != sys.snap.n()) {
        throw std::invalid_argument("velocity: input has wrong dimension");
    }
    if (sys.kind == SurrogateKind::Ball) {
        if (input.u.norm() > 1.0 + kNormSlack) {
            throw std::invalid_argument("velocity: ball input exceeds unit 2-norm");
        }
        const Mat basis = sys.geom.image_basis();
        const Vec residual = input.u - basis * (basis.transpose() * input.u);
        if (residual.norm() > kImageTol) {
            throw std::invalid_argument("velocity: ball input must lie in the image of g0");
        }
    } else {
        if (input.u.lpNorm<1>() > 1.0 + kNormSlack) {
            throw std::invalid_argument("velocity: polygon input exceeds unit 1-norm");
        }
        for (Index i = sys.geom.rank; i < input.u.size(); ++i) {
            if (input.u(i) != 0.0) {
                throw std::invalid_argument(
                    "velocity: polygon input must be supported on the first rank coordinates");
            }
        }
    }
}

}  // namespace

const char* to_string(SurrogateKind kind) {
    return kind == SurrogateKind::Ball ? "ball" : "polygon";
}

SurrogateSystem make_surrogate(SurrogateKind kind, const DynamicsSnapshot& snap,
                               double tol_rank) {
    return SurrogateSystem{kind, snap, geometry(snap, tol_rank)};
}

namespace detail {

Vec surrogate_velocity(const SurrogateSystem& sys, const Vec& x, const Vec& u) {
    const double s = x.norm();
    if (sys.kind == SurrogateKind::Ball) {
        return sys.snap.f0 + ball_radius(sys.geom, sys.snap, s) * u;
    }
    const Vec gains = axis_gains(sys.geom, sys.snap, s);
    return sys.snap.f0 + sys.geom.svd.u * gains.cwiseProduct(u);
}

}  // namespace detail

Vec velocity(const SurrogateSystem& sys, const Vec& x, const AdmissibleInput& input) {
    check_admissible(sys, input);
    if (x.size() != sys.snap.n()) {
        throw std::invalid_argument("velocity: state has wrong dimension");
    }
    return detail::surrogate_velocity(sys, x, input.u);
}

AdmissibleInput sample_input(const SurrogateSystem& sys, std::mt19937_64& rng) {
    AdmissibleInput input;
    input.kind = sys.kind;
    if (sys.kind == SurrogateKind::Ball) {
        input.u = sys.geom.image_basis() * sample_unit_ball(sys.geom.rank, rng);
    } else {
        input.u = Vec::Zero(sys.snap.n());
        input.u.head(sys.geom.rank) = sample_cross_polytope(sys.geom.rank, rng);
    }
    return input;
}

AdmissibleInput sample_input(const SurrogateSystem& sys, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    return sample_input(sys, rng);
}

namespace {

/// Admissible input with the largest velocity component toward `dir` at
/// state x.
Vec steering_input(const SurrogateSystem& sys, const Vec& x, const Vec& dir) {
    if (sys.kind == SurrogateKind::Ball) {
        const Mat basis = sys.geom.image_basis();
        Vec projected = basis * (basis.transpose() * dir);
        const double norm = projected.norm();
        if (norm < 1e-12) return Vec::Zero(sys.snap.n());
        return projected / norm;
    }
    // Linear objectives over the cross-polytope peak at a vertex +-e_i; the
    // payoff of vertex i is its gain times its alignment with dir.
    const Vec gains = axis_gains(sys.geom, sys.snap, x.norm());
    Vec u = Vec::Zero(sys.snap.n());
    Index best = -1;
    double best_score = 0.0;
    double best_sign = 1.0;
    for (Index i = 0; i < sys.geom.rank; ++i) {
        const double along = sys.geom.svd.u.col(i).dot(dir);
        const double score = gains(i) * std::abs(along);
        if (score > best_score) {
            best_score = score;
            best = i;
            best_sign = along >= 0.0 ? 1.0 : -1.0;
        }
    }
    if (best >= 0) u(best) = best_sign;
    return u;
}

}  // namespace

SteerResult greedy_steer(const SurrogateSystem& sys, const Vec& target, double horizon,
                         double dt, const Vec& x0) {
    if (!(dt > 0.0) || horizon < dt) {
        throw std::invalid_argument("greedy_steer: require dt > 0 and horizon >= dt");
    }
    if (target.size() != sys.snap.n()) {
        throw std::invalid_argument("greedy_steer: target has wrong dimension");
    }
    if (x0.size() != 0 && x0.size() != sys.snap.n()) {
        throw std::invalid_argument("greedy_steer: x0 has wrong dimension");
    }
    const double tol = 1e-3 * std::max(1.0, target.norm());

    SteerResult result;
    Vec x = x0.size() != 0 ? x0 : Vec::Zero(sys.snap.n());
    double t = 0.0;
    result.trajectory.times.push_back(t);
    result.trajectory.states.push_back(x);
    if ((x - target).norm() <= tol) {
        result.reached = true;
        result.time = 0.0;
        return result;
    }

    const double eps = 1e-12 * std::max(1.0, horizon);
    while (t < horizon - eps) {
        const Vec offset = target - x;
        const Vec u = steering_input(sys, x, offset.normalized());
        const Vec v = detail::surrogate_velocity(sys, x, u);
        double h = std::min(dt, horizon - t);
        const double speed = v.norm();
        // Shorten the last step so the trajectory lands on the target instead
        // of stepping over it.
        if (speed > 0.0) h = std::min(h, std::max(offset.norm() / speed, 1e-6 * dt));
        x = detail::rk4_step([&](const Vec& y) { return detail::surrogate_velocity(sys, y, u); },
                             x, h);
        t += h;
        result.trajectory.times.push_back(t);
        result.trajectory.states.push_back(x);
        if ((x - target).norm() <= tol) {
            result.reached = true;
            result.time = t;
            return result;
        }
    }
    result.reached = false;
    result.time = horizon;
    return result;
}

}  // namespace grs
