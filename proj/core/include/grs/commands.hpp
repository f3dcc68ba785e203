#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "grs/scenario.hpp"

namespace grs {

/// Writes velocity-set boundary polylines and gain tables for one state norm:
/// ball_polyline.csv / advanced_polyline.csv (theta, x, y), k_gains.csv
/// (theta, k), lambda_gains.csv (s, lambda_1.., ball_radius) and gvs.json.
/// Beyond the validity radius the boundaries degenerate to the single point
/// f(0); a warning goes to `log`.
struct GvsOptions {
    double x_norm = 0.0;
    std::pair<Index, Index> plane = {0, 1};  ///< indices of singular directions spanning the plot plane.
    int segments = 256;
    std::string out_dir = "gvs_out";
};
int run_gvs(const ScenarioConfig& scenario, const GvsOptions& opts, std::ostream& log);

/// Monte Carlo clouds and projected hulls for the requested systems, plus a
/// meta.json sidecar with the fully resolved configuration. `which` is one of
/// ball, polygon, truth, all.
struct ReachOptions {
    std::string which = "all";
    std::pair<Index, Index> dims = {0, 1};
    std::string out_dir = "reach_out";
    unsigned threads = 0;
};
int run_reach(const ScenarioConfig& scenario, const ReachOptions& opts, std::ostream& log);

/// Per-surrogate containment report for each target: the sound greedy-steering
/// certificate and the statistical hull-membership estimate. Returns 0 when
/// any steering certificate holds, 1 otherwise.
struct ContainsOptions {
    std::optional<Eigen::Vector2d> target;     ///< overrides the scenario's target list.
    std::optional<std::pair<Index, Index>> dims;
    std::optional<double> horizon;
    unsigned threads = 0;
};
int run_contains(const ScenarioConfig& scenario, const ContainsOptions& opts,
                 std::ostream& report);

int run_scenario_list(std::ostream& out);
int run_scenario_show(const ScenarioConfig& scenario, std::ostream& out);

}  // namespace grs
