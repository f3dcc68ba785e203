#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grs/surrogate.hpp"
#include "grs/trajectory.hpp"

namespace grs {

/// Thrown when an integrator cannot continue; `t` identifies where, and
/// `trajectory` which Monte Carlo rollout (or -1 outside a rollout).
struct IntegratorError : std::runtime_error {
    IntegratorError(const std::string& what, double t_arg, int trajectory_arg = -1)
        : std::runtime_error(what), t(t_arg), trajectory(trajectory_arg) {}
    double t = 0.0;
    int trajectory = -1;
};

enum class IntegratorKind { Rk4Fixed, Rkf45Adaptive };

/// Monte Carlo reachable-set estimation settings. Inputs are piecewise
/// constant: each rollout resamples its input every `input_hold` seconds, and
/// the integrator never steps across a hold boundary.
struct ReachConfig {
    double horizon = 0.25;
    int n_trajectories = 2000;
    double dt = 1e-3;             ///< fixed step (Rk4Fixed) or initial step and underflow floor unit (Rkf45Adaptive).
    double input_hold = 0.0125;
    std::uint64_t seed = 1;
    bool collect_intermediate = false;
    IntegratorKind integrator = IntegratorKind::Rk4Fixed;
    double abs_tol = 1e-9;        ///< adaptive only.
    double rel_tol = 1e-9;        ///< adaptive only.
};

/// Throws std::invalid_argument unless 0 < dt <= input_hold <= horizon and
/// n_trajectories >= 1.
void validate(const ReachConfig& cfg);

using VelocityFn = std::function<Vec(const Vec& x, const Vec& u)>;
using InputSignal = std::function<Vec(double t)>;

struct IntegratorSettings {
    IntegratorKind kind = IntegratorKind::Rk4Fixed;
    double dt = 1e-3;
    double input_hold = std::numeric_limits<double>::infinity();
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
};

IntegratorSettings integrator_settings(const ReachConfig& cfg);

/// Integrates dx/dt = dyn(x, input(t)) over [0, T]. The input signal must be
/// constant inside each hold interval; it is evaluated once per interval.
/// Rk4Fixed takes classic steps of size dt (with a final partial step per
/// interval); Rkf45Adaptive takes embedded Dormand-Prince 5(4) steps keeping
/// the per-step error below abs_tol + rel_tol * |x|, with step sizes bounded
/// to [dt/64, input_hold]. Throws IntegratorError on step underflow.
Trajectory integrate(const VelocityFn& dyn, const Vec& x0, const InputSignal& input, double T,
                     const IntegratorSettings& settings);

/// Ground-truth dynamics for scenarios where the full system is known:
/// dx/dt = velocity(x, u) with inputs in the closed unit 2-norm ball of R^m.
struct TrueDynamics {
    Index n = 0;
    Index m = 0;
    VelocityFn velocity;
    std::string name = "truth";
};

/// What a Monte Carlo rollout needs from a system: a velocity map and an
/// admissible-input sampler.
struct RolloutSystem {
    Index state_dim = 0;
    VelocityFn velocity;
    std::function<Vec(std::mt19937_64& rng)> sample_input;
    std::string name;
};

RolloutSystem rollout_system(const SurrogateSystem& sys);
RolloutSystem rollout_system(const TrueDynamics& dyn);

/// Timestamped point cloud sampled from a system's reachable set.
struct ReachCloud {
    std::vector<TimedState> points;
    double horizon = 0.0;
    std::string system;
    std::uint64_t seed = 0;
};

/// Runs cfg.n_trajectories independent rollouts from x0 under random
/// piecewise-constant inputs and collects endpoints (plus every accepted step
/// when cfg.collect_intermediate). Each rollout draws from its own RNG stream
/// derived from (cfg.seed, trajectory index), so results are identical for
/// any `threads` value; 0 picks a thread count automatically.
ReachCloud monte_carlo_reach(const RolloutSystem& sys, const Vec& x0, const ReachConfig& cfg,
                             unsigned threads = 0);
ReachCloud monte_carlo_reach(const SurrogateSystem& sys, const Vec& x0, const ReachConfig& cfg,
                             unsigned threads = 0);
ReachCloud monte_carlo_reach(const TrueDynamics& dyn, const Vec& x0, const ReachConfig& cfg,
                             unsigned threads = 0);

/// Coordinate projection of the cloud onto two state indices.
std::vector<Eigen::Vector2d> project(const ReachCloud& cloud, std::pair<Index, Index> dims);

/// Convex hull by Andrew's monotone chain: counterclockwise vertices,
/// collinear points dropped; collinear input degenerates to the two extreme
/// points. Throws std::invalid_argument on empty input.
std::vector<Eigen::Vector2d> hull2d(const std::vector<Eigen::Vector2d>& points);

/// True when p is inside the hull or within `tol` of its boundary.
bool point_in_hull(const std::vector<Eigen::Vector2d>& hull, const Eigen::Vector2d& p,
                   double tol = 1e-9);

/// 0 when p is inside the hull, otherwise the distance to its boundary.
double distance_outside_hull(const std::vector<Eigen::Vector2d>& hull,
                             const Eigen::Vector2d& p);

struct ContainsResult {
    bool in_hull = false;                       ///< statistical: target inside the sampled cloud's hull.
    std::optional<bool> certified_by_steering;  ///< sound certificate; present for surrogate clouds.
    std::optional<double> first_reach_time;     ///< present when steering reached the target.
};

/// Answers whether `target` (in the projected coordinates `dims`) is covered
/// by the cloud. When the cloud came from a surrogate, pass it to also run
/// the greedy-steering certificate over the cloud's horizon; the full-state
/// steering target takes its remaining coordinates from x0 (zeros when
/// omitted).
ContainsResult contains(const ReachCloud& cloud, const Eigen::Vector2d& target,
                        std::pair<Index, Index> dims, const SurrogateSystem* sys = nullptr,
                        const Vec* x0 = nullptr, double steer_dt = 1e-3);

}  // namespace grs
