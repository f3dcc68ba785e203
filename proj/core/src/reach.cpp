#include "grs/reach.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "grs/rng.hpp"

namespace grs {

void validate(const ReachConfig& cfg) {
    if (!(cfg.dt > 0.0) || cfg.dt > cfg.input_hold || cfg.input_hold > cfg.horizon) {
        throw std::invalid_argument("reach config: require 0 < dt <= input_hold <= horizon");
    }
    if (cfg.n_trajectories < 1) {
        throw std::invalid_argument("reach config: n_trajectories must be at least 1");
    }
}

IntegratorSettings integrator_settings(const ReachConfig& cfg) {
    IntegratorSettings s;
    s.kind = cfg.integrator;
    s.dt = cfg.dt;
    s.input_hold = cfg.input_hold;
    s.abs_tol = cfg.abs_tol;
    s.rel_tol = cfg.rel_tol;
    return s;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

struct Dopri45Step {
    Vec x5;       // fifth-order solution
    double err;   // 2-norm of the embedded error estimate
};

template <class F>
Dopri45Step dopri45_step(F&& f, const Vec& x, double h) {
    const Vec k1 = f(x);
    const Vec k2 = f(x + h * (kA21 * k1));
    const Vec k3 = f(x + h * (kA31 * k1 + kA32 * k2));
    const Vec k4 = f(x + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const Vec k5 = f(x + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const Vec k6 = f(x + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
    Dopri45Step out;
    out.x5 = x + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const Vec k7 = f(out.x5);
    const Vec err_vec =
        h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    out.err = err_vec.norm();
    return out;
}

template <class Record>
void integrate_window(const VelocityFn& dyn, const Vec& u, Vec& x, double& t, double window_end,
                      const IntegratorSettings& s, Record&& record) {
    const double eps = 1e-12 * std::max(1.0, window_end);
    const auto rhs = [&](const Vec& y) { return dyn(y, u); };

    if (s.kind == IntegratorKind::Rk4Fixed) {
        while (t < window_end - eps) {
            const double h = std::min(s.dt, window_end - t);
            x = detail::rk4_step(rhs, x, h);
            t = (window_end - t <= s.dt + eps) ? window_end : t + h;
            record(t, x);
        }
        return;
    }

    const double floor_step = s.dt / 64.0;
    double h = std::min(s.dt, window_end - t);
    while (t < window_end - eps) {
        h = std::min(h, window_end - t);
        const Dopri45Step step = dopri45_step(rhs, x, h);
        const double tol = s.abs_tol + s.rel_tol * x.norm();
        if (step.err <= tol || h <= floor_step * (1.0 + 1e-12)) {
            if (step.err > tol) {
                throw IntegratorError("rkf45: error tolerance unreachable at minimum step", t);
            }
            x = step.x5;
            t = (window_end - t <= h + eps) ? window_end : t + h;
            record(t, x);
        }
        const double shrink =
            step.err > 0.0 ? 0.9 * std::pow(tol / step.err, 0.2) : 5.0;
        h *= std::clamp(shrink, 0.2, 5.0);
        h = std::clamp(h, floor_step, s.input_hold);
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw IntegratorError("rkf45: step size underflow", t);
        }
    }
}

}  // namespace

Trajectory integrate(const VelocityFn& dyn, const Vec& x0, const InputSignal& input, double T,
                     const IntegratorSettings& settings) {
    if (!(settings.dt > 0.0) || T < 0.0) {
        throw std::invalid_argument("integrate: require dt > 0 and T >= 0");
    }
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    Vec x = x0;
    double t = 0.0;
    const double hold = settings.input_hold;
    std::size_t window = 0;
    while (t < T - 1e-12 * std::max(1.0, T)) {
        double w1 = (static_cast<double>(window) + 1.0) * hold;
        if (!(w1 < T)) w1 = T;  // also covers hold = infinity
        // Sampling at the window midpoint keeps the lookup away from the
        // boundaries of a piecewise-constant signal.
        const Vec u = input(std::min(0.5 * (t + w1), T));
        integrate_window(dyn, u, x, t, w1, settings, [&](double tk, const Vec& xk) {
            traj.times.push_back(tk);
            traj.states.push_back(xk);
        });
        ++window;
    }
    return traj;
}

RolloutSystem rollout_system(const SurrogateSystem& sys) {
    RolloutSystem out;
    out.state_dim = sys.snap.n();
    out.velocity = [sys](const Vec& x, const Vec& u) {
        return detail::surrogate_velocity(sys, x, u);
    };
    out.sample_input = [sys](std::mt19937_64& rng) { return sample_input(sys, rng).u; };
    out.name = to_string(sys.kind);
    return out;
}

RolloutSystem rollout_system(const TrueDynamics& dyn) {
    RolloutSystem out;
    out.state_dim = dyn.n;
    out.velocity = dyn.velocity;
    const Index m = dyn.m;
    out.sample_input = [m](std::mt19937_64& rng) { return sample_unit_ball(m, rng); };
    out.name = dyn.name;
    return out;
}

namespace {

void rollout(const RolloutSystem& sys, const Vec& x0, const ReachConfig& cfg, int index,
             std::vector<TimedState>& out) {
    std::mt19937_64 rng = make_stream(cfg.seed, static_cast<std::uint64_t>(index));
    const IntegratorSettings settings = integrator_settings(cfg);

    Vec x = x0;
    double t = 0.0;
    if (cfg.collect_intermediate) out.push_back({0.0, x0});
    try {
        std::size_t window = 0;
        while (t < cfg.horizon - 1e-12 * std::max(1.0, cfg.horizon)) {
            const double w1 =
                std::min(static_cast<double>(window + 1) * cfg.input_hold, cfg.horizon);
            const Vec u = sys.sample_input(rng);
            integrate_window(sys.velocity, u, x, t, w1, settings,
                             [&](double tk, const Vec& xk) {
                                 if (cfg.collect_intermediate) out.push_back({tk, xk});
                             });
            ++window;
        }
    } catch (const IntegratorError& err) {
        throw IntegratorError(std::string(err.what()) + " (trajectory " +
                                  std::to_string(index) + ")",
                              err.t, index);
    }
    if (!cfg.collect_intermediate) out.push_back({cfg.horizon, x});
}

}  // namespace

ReachCloud monte_carlo_reach(const RolloutSystem& sys, const Vec& x0, const ReachConfig& cfg,
                             unsigned threads) {
    validate(cfg);
    if (x0.size() != sys.state_dim) {
        throw std::invalid_argument("monte_carlo_reach: x0 has wrong dimension");
    }

    const int n = cfg.n_trajectories;
    std::vector<std::vector<TimedState>> slots(n);

    unsigned worker_count = threads;
    if (worker_count == 0) {
        worker_count = std::max(1u, std::thread::hardware_concurrency());
    }
    worker_count = std::min<unsigned>(worker_count, static_cast<unsigned>(n));

    std::exception_ptr failure;
    if (worker_count <= 1) {
        for (int i = 0; i < n; ++i) rollout(sys, x0, cfg, i, slots[i]);
    } else {
        std::atomic<int> next{0};
        std::atomic<bool> failed{false};
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            workers.emplace_back([&]() {
                while (!failed.load(std::memory_order_relaxed)) {
                    const int i = next.fetch_add(1);
                    if (i >= n) break;
                    try {
                        rollout(sys, x0, cfg, i, slots[i]);
                    } catch (...) {
                        std::scoped_lock lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        failed.store(true);
                    }
                }
            });
        }
        for (auto& worker : workers) worker.join();
    }
    if (failure) std::rethrow_exception(failure);

    ReachCloud cloud;
    cloud.horizon = cfg.horizon;
    cloud.system = sys.name;
    cloud.seed = cfg.seed;
    std::size_t total = 0;
    for (const auto& slot : slots) total += slot.size();
    cloud.points.reserve(total);
    for (auto& slot : slots) {
        cloud.points.insert(cloud.points.end(), std::make_move_iterator(slot.begin()),
                            std::make_move_iterator(slot.end()));
    }
    return cloud;
}

ReachCloud monte_carlo_reach(const SurrogateSystem& sys, const Vec& x0, const ReachConfig& cfg,
                             unsigned threads) {
    return monte_carlo_reach(rollout_system(sys), x0, cfg, threads);
}

ReachCloud monte_carlo_reach(const TrueDynamics& dyn, const Vec& x0, const ReachConfig& cfg,
                             unsigned threads) {
    return monte_carlo_reach(rollout_system(dyn), x0, cfg, threads);
}

std::vector<Eigen::Vector2d> project(const ReachCloud& cloud, std::pair<Index, Index> dims) {
    std::vector<Eigen::Vector2d> out;
    out.reserve(cloud.points.size());
    for (const auto& point : cloud.points) {
        if (dims.first < 0 || dims.second < 0 || dims.first >= point.x.size() ||
            dims.second >= point.x.size()) {
            throw std::invalid_argument("project: dimension index out of range");
        }
        out.emplace_back(point.x(dims.first), point.x(dims.second));
    }
    return out;
}

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + s * ab)).norm();
}

}  // namespace

std::vector<Eigen::Vector2d> hull2d(const std::vector<Eigen::Vector2d>& points) {
    if (points.empty()) {
        throw std::invalid_argument("hull2d: empty point set");
    }
    std::vector<Eigen::Vector2d> pts = points;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) { return a == b; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    std::vector<Eigen::Vector2d> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper hull
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool point_in_hull(const std::vector<Eigen::Vector2d>& hull, const Eigen::Vector2d& p,
                   double tol) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return (p - hull[0]).norm() <= tol;
    if (hull.size() == 2) return point_segment_distance(p, hull[0], hull[1]) <= tol;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Eigen::Vector2d& a = hull[i];
        const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
        const double edge_len = (b - a).norm();
        if (edge_len == 0.0) continue;
        // Signed perpendicular distance; negative means outside a CCW hull.
        const double signed_dist = cross2(a, b, p) / edge_len;
        if (signed_dist < -tol) return false;
    }
    return true;
}

double distance_outside_hull(const std::vector<Eigen::Vector2d>& hull,
                             const Eigen::Vector2d& p) {
    if (hull.empty()) return std::numeric_limits<double>::infinity();
    if (point_in_hull(hull, p, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    if (hull.size() == 1) return (p - hull[0]).norm();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Eigen::Vector2d& a = hull[i];
        const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
        best = std::min(best, point_segment_distance(p, a, b));
    }
    return best;
}

ContainsResult contains(const ReachCloud& cloud, const Eigen::Vector2d& target,
                        std::pair<Index, Index> dims, const SurrogateSystem* sys,
                        const Vec* x0, double steer_dt) {
    ContainsResult result;
    const auto hull = hull2d(project(cloud, dims));
    result.in_hull = point_in_hull(hull, target);

    if (sys != nullptr) {
        Vec full_target = x0 != nullptr ? *x0 : Vec::Zero(sys->snap.n());
        if (dims.first >= full_target.size() || dims.second >= full_target.size()) {
            throw std::invalid_argument("contains: dims do not fit the steering state");
        }
        full_target(dims.first) = target.x();
        full_target(dims.second) = target.y();
        const SteerResult steer =
            greedy_steer(*sys, full_target, cloud.horizon, steer_dt,
                         x0 != nullptr ? *x0 : Vec());
        result.certified_by_steering = steer.reached;
        if (steer.reached) result.first_reach_time = steer.time;
    }
    return result;
}

}  // namespace grs
