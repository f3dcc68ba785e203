#pragma once

#include <vector>

#include "grs/mat.hpp"

namespace grs {

struct TimedState {
    double t = 0.0;
    Vec x;
};

/// Sampled solution of an ODE: states[i] is the state at times[i].
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;

    std::size_t size() const { return times.size(); }
    double final_time() const { return times.back(); }
    const Vec& final_state() const { return states.back(); }
};

namespace detail {

/// One classic fourth-order Runge-Kutta step of size h for dx/dt = f(x).
template <class F>
Vec rk4_step(F&& f, const Vec& x, double h) {
    const Vec k1 = f(x);
    const Vec k2 = f(x + (0.5 * h) * k1);
    const Vec k3 = f(x + (0.5 * h) * k2);
    const Vec k4 = f(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail
}  // namespace grs
