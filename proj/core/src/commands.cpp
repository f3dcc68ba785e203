#include "grs/commands.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "grs/io.hpp"

namespace grs {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty()) return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

}  // namespace

int run_gvs(const ScenarioConfig& scenario, const GvsOptions& opts, std::ostream& log) {
    if (opts.x_norm < 0.0) {
        throw std::invalid_argument("gvs: x-norm must be nonnegative");
    }
    const GvsGeometry geom = geometry(scenario.snapshot);
    if (opts.plane.first < 0 || opts.plane.second < 0 || opts.plane.first >= geom.rank ||
        opts.plane.second >= geom.rank || opts.plane.first == opts.plane.second) {
        throw std::invalid_argument(
            "gvs: plane indices must be two distinct singular directions below the rank");
    }
    io::ensure_directory(opts.out_dir);

    const Vec plane_u = geom.svd.u.col(opts.plane.first);
    const Vec plane_v = geom.svd.u.col(opts.plane.second);
    const Eigen::Vector2d center(scenario.snapshot.f0.dot(plane_u),
                                 scenario.snapshot.f0.dot(plane_v));
    const bool degenerate = opts.x_norm >= geom.validity_radius;

    std::vector<std::vector<double>> ball_rows;
    std::vector<std::vector<double>> advanced_rows;
    std::vector<std::vector<double>> gain_rows;
    if (degenerate) {
        log << "warning: |x| = " << opts.x_norm << " is at or beyond the validity radius "
            << geom.validity_radius << "; velocity sets degenerate to the drift point\n";
        ball_rows.push_back({0.0, center.x(), center.y()});
        advanced_rows.push_back({0.0, center.x(), center.y()});
        gain_rows.push_back({0.0, 0.0});
    } else {
        const BoundaryPolylines lines = boundary_polyline(
            geom, scenario.snapshot, opts.x_norm, plane_u, plane_v, opts.segments);
        for (std::size_t i = 0; i < lines.theta.size(); ++i) {
            ball_rows.push_back({lines.theta[i], lines.ball[i].x(), lines.ball[i].y()});
            advanced_rows.push_back(
                {lines.theta[i], lines.advanced[i].x(), lines.advanced[i].y()});
            const Eigen::Vector2d offset = lines.advanced[i] - center;
            gain_rows.push_back({lines.theta[i], offset.norm()});
        }
    }
    io::write_csv(join_path(opts.out_dir, "ball_polyline.csv"), {"theta", "x", "y"}, ball_rows);
    io::write_csv(join_path(opts.out_dir, "advanced_polyline.csv"), {"theta", "x", "y"},
                  advanced_rows);
    io::write_csv(join_path(opts.out_dir, "k_gains.csv"), {"theta", "k"}, gain_rows);

    // Gain-versus-state-norm table over [0, validity_radius].
    std::vector<std::string> lambda_columns = {"s"};
    for (Index i = 0; i < scenario.snapshot.n(); ++i) {
        lambda_columns.push_back("lambda_" + std::to_string(i + 1));
    }
    lambda_columns.push_back("ball_radius");
    std::vector<std::vector<double>> lambda_rows;
    const int grid = 100;
    for (int k = 0; k <= grid; ++k) {
        const double s = geom.validity_radius * k / grid;
        const Vec gains = axis_gains(geom, scenario.snapshot, s);
        std::vector<double> row = {s};
        for (Index i = 0; i < gains.size(); ++i) row.push_back(gains(i));
        row.push_back(ball_radius(geom, scenario.snapshot, s));
        lambda_rows.push_back(std::move(row));
    }
    io::write_csv(join_path(opts.out_dir, "lambda_gains.csv"), lambda_columns, lambda_rows);

    nlohmann::json j;
    j["scenario"] = scenario.name;
    j["x_norm"] = opts.x_norm;
    j["plane"] = {opts.plane.first, opts.plane.second};
    j["segments"] = opts.segments;
    j["degenerate"] = degenerate;
    j["rank"] = geom.rank;
    j["mu"] = geom.mu;
    j["sigma_r"] = geom.sigma_r;
    j["validity_radius"] = geom.validity_radius;
    j["image_radius"] = geom.image_radius;
    nlohmann::json sigma = nlohmann::json::array();
    for (Index i = 0; i < geom.svd.sigma.size(); ++i) sigma.push_back(geom.svd.sigma(i));
    j["singular_values"] = sigma;
    j["ball_radius"] = ball_radius(geom, scenario.snapshot, opts.x_norm);
    const Vec gains_at_x = axis_gains(geom, scenario.snapshot, opts.x_norm);
    nlohmann::json lambdas = nlohmann::json::array();
    for (Index i = 0; i < gains_at_x.size(); ++i) lambdas.push_back(gains_at_x(i));
    j["lambda_at_x"] = lambdas;
    io::write_text_file(join_path(opts.out_dir, "gvs.json"), j.dump(2));

    log << "wrote velocity-set data for scenario '" << scenario.name << "' to " << opts.out_dir
        << "\n";
    return 0;
}

namespace {

void emit_cloud(const ReachCloud& cloud, const std::string& stem,
                std::pair<Index, Index> dims, const ReachOptions& opts, std::ostream& log,
                nlohmann::json& outputs) {
    const std::string cloud_csv = join_path(opts.out_dir, stem + "_cloud.csv");
    const std::string cloud_json = join_path(opts.out_dir, stem + "_cloud.json");
    const std::string hull_csv = join_path(opts.out_dir, stem + "_hull.csv");
    io::write_cloud_csv(cloud_csv, cloud);
    io::write_cloud_json(cloud_json, cloud);
    io::write_hull_csv(hull_csv, hull2d(project(cloud, dims)));
    outputs.push_back(cloud_csv);
    outputs.push_back(cloud_json);
    outputs.push_back(hull_csv);
    log << "  " << stem << ": " << cloud.points.size() << " points\n";
}

}  // namespace

int run_reach(const ScenarioConfig& scenario, const ReachOptions& opts, std::ostream& log) {
    const bool want_ball = opts.which == "ball" || opts.which == "all";
    const bool want_polygon = opts.which == "polygon" || opts.which == "all";
    const bool want_truth = opts.which == "truth" || opts.which == "all";
    if (!want_ball && !want_polygon && !want_truth) {
        throw std::invalid_argument("reach: --which must be ball, polygon, truth, or all");
    }
    if (opts.which == "truth" && !scenario.true_dynamics) {
        throw std::invalid_argument("reach: scenario '" + scenario.name +
                                    "' has no ground-truth dynamics; 'truth' is unavailable");
    }
    io::ensure_directory(opts.out_dir);
    log << "reach: scenario '" << scenario.name << "', T = " << scenario.reach.horizon << ", "
        << scenario.reach.n_trajectories << " trajectories\n";

    nlohmann::json outputs = nlohmann::json::array();
    if (want_ball) {
        const auto sys = make_surrogate(SurrogateKind::Ball, scenario.snapshot);
        emit_cloud(monte_carlo_reach(sys, scenario.x0, scenario.reach, opts.threads), "ball",
                   opts.dims, opts, log, outputs);
    }
    if (want_polygon) {
        const auto sys = make_surrogate(SurrogateKind::Polygon, scenario.snapshot);
        emit_cloud(monte_carlo_reach(sys, scenario.x0, scenario.reach, opts.threads), "polygon",
                   opts.dims, opts, log, outputs);
    }
    if (want_truth && scenario.true_dynamics) {
        const TrueDynamics truth = make_true_dynamics(*scenario.true_dynamics);
        emit_cloud(monte_carlo_reach(truth, scenario.x0, scenario.reach, opts.threads), "truth",
                   opts.dims, opts, log, outputs);
    } else if (want_truth && opts.which == "all") {
        log << "  truth: skipped (no ground-truth dynamics in scenario)\n";
    }

    nlohmann::json meta;
    meta["command"] = {{"which", opts.which},
                       {"dims", {opts.dims.first, opts.dims.second}},
                       {"threads", opts.threads},
                       {"out", opts.out_dir}};
    meta["scenario"] = nlohmann::json::parse(scenario_to_json(scenario));
    meta["outputs"] = outputs;
    io::write_text_file(join_path(opts.out_dir, "meta.json"), meta.dump(2));
    return 0;
}

int run_contains(const ScenarioConfig& scenario, const ContainsOptions& opts,
                 std::ostream& report) {
    std::vector<TargetSpec> targets;
    if (opts.target) {
        TargetSpec spec;
        spec.point = *opts.target;
        spec.dims = opts.dims.value_or(std::make_pair<Index, Index>(0, 1));
        spec.horizon = opts.horizon.value_or(scenario.reach.horizon);
        targets.push_back(spec);
    } else {
        targets = scenario.targets;
        for (TargetSpec& spec : targets) {
            if (opts.dims) spec.dims = *opts.dims;
            if (opts.horizon) spec.horizon = *opts.horizon;
        }
    }
    if (targets.empty()) {
        throw std::invalid_argument("contains: no target given and scenario '" + scenario.name +
                                    "' defines none");
    }

    bool any_certified = false;
    for (const TargetSpec& target : targets) {
        if (target.dims.first < 0 || target.dims.second < 0 ||
            target.dims.first >= scenario.snapshot.n() ||
            target.dims.second >= scenario.snapshot.n()) {
            throw std::invalid_argument("contains: target dims out of range");
        }
        ReachConfig cfg = scenario.reach;
        cfg.horizon = target.horizon;
        cfg.input_hold = std::min(cfg.input_hold, cfg.horizon);
        cfg.dt = std::min(cfg.dt, cfg.input_hold);
        cfg.collect_intermediate = true;  // reachability-within-T semantics

        report << "target (" << target.point.x() << ", " << target.point.y() << ") dims ("
               << target.dims.first << ", " << target.dims.second << ") T " << target.horizon
               << "\n";
        for (const SurrogateKind kind : {SurrogateKind::Ball, SurrogateKind::Polygon}) {
            const SurrogateSystem sys = make_surrogate(kind, scenario.snapshot);
            const ReachCloud cloud = monte_carlo_reach(sys, scenario.x0, cfg, opts.threads);
            const ContainsResult result =
                contains(cloud, target.point, target.dims, &sys, &scenario.x0, cfg.dt);
            report << "  " << to_string(kind)
                   << ": certified_by_steering=" << (*result.certified_by_steering ? "true" : "false");
            if (result.first_reach_time) {
                report << " first_reach_time=" << *result.first_reach_time;
            }
            report << " in_hull=" << (result.in_hull ? "true" : "false") << "\n";
            any_certified = any_certified || *result.certified_by_steering;
        }
    }
    report << (any_certified
                   ? "verdict: guaranteed reachable (steering certificate found)\n"
                   : "verdict: not certified (steering failed; this does not prove "
                     "unreachability)\n");
    return any_certified ? 0 : 1;
}

int run_scenario_list(std::ostream& out) {
    for (const std::string& id : builtin_scenarios()) {
        out << id << "  -  " << describe_builtin(id) << "\n";
    }
    return 0;
}

int run_scenario_show(const ScenarioConfig& scenario, std::ostream& out) {
    out << scenario_to_json(scenario) << "\n";
    return 0;
}

}  // namespace grs
