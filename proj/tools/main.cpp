// Command-line front end: estimates guaranteed reachable sets of a partially
// known control-affine system from one local-dynamics sample plus Lipschitz
// bounds, and emits figure-ready CSV/JSON data.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grs/commands.hpp"

namespace {

struct ScenarioArgs {
    std::string scenario;
    std::string config;
    std::optional<double> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<int> trajectories;
    std::optional<double> dt;
    std::optional<double> input_hold;
    std::optional<bool> collect_intermediate;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
    cmd->add_option("--scenario", args.scenario, "builtin scenario id (see 'scenario list')");
    cmd->add_option("--config", args.config, "path to a scenario JSON file");
    cmd->add_option("--T", args.horizon, "time horizon in seconds");
    cmd->add_option("--seed", args.seed, "master RNG seed");
    cmd->add_option("--trajectories", args.trajectories, "Monte Carlo trajectory count");
    cmd->add_option("--dt", args.dt, "integrator step in seconds");
    cmd->add_option("--input-hold", args.input_hold,
                    "input resampling interval in seconds (default T/20)");
}

grs::ScenarioConfig resolve_scenario(const ScenarioArgs& args) {
    if (args.scenario.empty() == args.config.empty()) {
        throw CLI::ValidationError("pass exactly one of --scenario or --config");
    }
    grs::ScenarioConfig cfg =
        grs::load_scenario(args.scenario.empty() ? args.config : args.scenario);
    if (args.horizon) {
        cfg.reach.horizon = *args.horizon;
        if (!args.input_hold) cfg.reach.input_hold = *args.horizon / 20.0;
        for (auto& target : cfg.targets) target.horizon = *args.horizon;
    }
    if (args.input_hold) cfg.reach.input_hold = *args.input_hold;
    if (args.seed) cfg.reach.seed = *args.seed;
    if (args.trajectories) cfg.reach.n_trajectories = *args.trajectories;
    if (args.dt) cfg.reach.dt = *args.dt;
    if (args.collect_intermediate) cfg.reach.collect_intermediate = *args.collect_intermediate;
    cfg.reach.dt = std::min(cfg.reach.dt, cfg.reach.input_hold);
    grs::validate(cfg.reach);
    return cfg;
}

std::pair<grs::Index, grs::Index> parse_dims(const std::vector<grs::Index>& dims) {
    if (dims.size() != 2) throw CLI::ValidationError("--dims expects two indices, e.g. 0,1");
    return {dims[0], dims[1]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"guaranteed reachable set underapproximation for control-affine systems "
                 "with unknown dynamics"};
    app.require_subcommand(1);

    // scenario list / show
    CLI::App* scenario_cmd = app.add_subcommand("scenario", "inspect builtin scenarios");
    scenario_cmd->require_subcommand(1);
    scenario_cmd->add_subcommand("list", "list builtin scenario ids");
    CLI::App* show_cmd = scenario_cmd->add_subcommand("show", "print a resolved configuration");
    ScenarioArgs show_args;
    add_scenario_options(show_cmd, show_args);

    // gvs
    CLI::App* gvs_cmd =
        app.add_subcommand("gvs", "write guaranteed-velocity-set boundaries and gain tables");
    ScenarioArgs gvs_args;
    add_scenario_options(gvs_cmd, gvs_args);
    grs::GvsOptions gvs_opts;
    gvs_cmd->add_option("--x-norm", gvs_opts.x_norm, "state norm at which to evaluate the sets");
    std::vector<grs::Index> gvs_plane{0, 1};
    gvs_cmd->add_option("--plane", gvs_plane,
                        "two singular-direction indices spanning the plot plane")
        ->delimiter(',');
    gvs_cmd->add_option("--segments", gvs_opts.segments, "boundary samples per curve");
    gvs_cmd->add_option("--out", gvs_opts.out_dir, "output directory");

    // reach
    CLI::App* reach_cmd =
        app.add_subcommand("reach", "Monte Carlo reachable-set clouds and hulls");
    ScenarioArgs reach_args;
    add_scenario_options(reach_cmd, reach_args);
    grs::ReachOptions reach_opts;
    reach_cmd
        ->add_option("--which", reach_opts.which, "ball, polygon, truth, or all")
        ->check(CLI::IsMember({"ball", "polygon", "truth", "all"}));
    std::vector<grs::Index> reach_dims{0, 1};
    reach_cmd->add_option("--dims", reach_dims, "projection coordinates for hulls")->delimiter(',');
    reach_cmd->add_option("--out", reach_opts.out_dir, "output directory");
    reach_cmd->add_option("--threads", reach_opts.threads, "worker threads (0 = auto)");
    bool reach_intermediate = false;
    reach_cmd->add_flag("--collect-intermediate", reach_intermediate,
                        "record every integration step, not just endpoints");

    // contains
    CLI::App* contains_cmd = app.add_subcommand(
        "contains", "is a target guaranteed reachable? steering certificate + hull estimate");
    ScenarioArgs contains_args;
    add_scenario_options(contains_cmd, contains_args);
    grs::ContainsOptions contains_opts;
    std::vector<double> contains_target;
    contains_cmd->add_option("--target", contains_target,
                             "projected target coordinates, e.g. -15,-10")
        ->delimiter(',');
    std::vector<grs::Index> contains_dims;
    contains_cmd->add_option("--dims", contains_dims, "projection coordinates of the target")
        ->delimiter(',');
    contains_cmd->add_option("--threads", contains_opts.threads, "worker threads (0 = auto)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scenario_cmd->parsed()) {
            if (scenario_cmd->get_subcommand("list")->parsed()) {
                return grs::run_scenario_list(std::cout);
            }
            return grs::run_scenario_show(resolve_scenario(show_args), std::cout);
        }
        if (gvs_cmd->parsed()) {
            gvs_opts.plane = parse_dims(gvs_plane);
            return grs::run_gvs(resolve_scenario(gvs_args), gvs_opts, std::cerr);
        }
        if (reach_cmd->parsed()) {
            reach_opts.dims = parse_dims(reach_dims);
            ScenarioArgs args = reach_args;
            args.collect_intermediate = reach_intermediate;
            return grs::run_reach(resolve_scenario(args), reach_opts, std::cout);
        }
        if (contains_cmd->parsed()) {
            if (!contains_target.empty()) {
                if (contains_target.size() != 2) {
                    throw CLI::ValidationError("--target expects two coordinates, e.g. -15,-10");
                }
                contains_opts.target = Eigen::Vector2d(contains_target[0], contains_target[1]);
            }
            if (!contains_dims.empty()) contains_opts.dims = parse_dims(contains_dims);
            contains_opts.horizon = contains_args.horizon;
            return grs::run_contains(resolve_scenario(contains_args), contains_opts, std::cout);
        }
    } catch (const CLI::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
